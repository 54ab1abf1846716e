#pragma once

#include <string>

#include "emqm/evolve.hpp"
#include "emqm/grid.hpp"

namespace emqm {

/// Text dumps: CSV with a header row plus a JSON sidecar (<path>.json)
/// carrying the grid metadata. Columns:
///   wave field:   index,re,im
///   scalar field: index,value
///   vector field: index,vx,vy,vz
/// Values are written with 17 significant digits, '.' decimal, no locale.
void dump_wavefield_csv(const WaveField& psi, const std::string& path);
void dump_scalarfield_csv(const ScalarField& f, const std::string& path);
void dump_vectorfield_csv(const VectorField& f, const std::string& path);

/// One CSV per snapshot: <prefix>_NNNN.csv (+ sidecars); the sidecar of each
/// snapshot carries its time.
void dump_trajectory_csv(const EvolveResult& traj, const std::string& prefix);

}  // namespace emqm
