#include "emqm/dump.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace emqm {

namespace {

using json = nlohmann::ordered_json;

json grid_json(const GridSpec& g) {
    json out;
    out["dim"] = g.dim;
    out["npts"] = {g.npts[0], g.npts[1], g.npts[2]};
    out["spacing"] = {g.spacing[0], g.spacing[1], g.spacing[2]};
    out["origin"] = {g.origin[0], g.origin[1], g.origin[2]};
    return out;
}

void write_sidecar(const GridSpec& g, const std::string& path, const char* kind,
                   double time = 0.0, bool with_time = false) {
    json side;
    side["kind"] = kind;
    side["grid"] = grid_json(g);
    if (with_time) side["time"] = time;
    std::ofstream out(path + ".json");
    if (!out) throw std::runtime_error("dump: cannot open " + path + ".json");
    out << side.dump(2) << "\n";
}

std::FILE* open_csv(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("dump: cannot open " + path);
    return f;
}

}  // namespace

void dump_wavefield_csv(const WaveField& psi, const std::string& path) {
    std::FILE* f = open_csv(path);
    std::fprintf(f, "index,re,im\n");
    for (std::size_t i = 0; i < psi.amp.size(); ++i)
        std::fprintf(f, "%zu,%.17g,%.17g\n", i, psi.amp[i].real(), psi.amp[i].imag());
    std::fclose(f);
    write_sidecar(psi.grid, path, "wavefield");
}

void dump_scalarfield_csv(const ScalarField& field, const std::string& path) {
    std::FILE* f = open_csv(path);
    std::fprintf(f, "index,value\n");
    for (std::size_t i = 0; i < field.val.size(); ++i)
        std::fprintf(f, "%zu,%.17g\n", i, field.val[i]);
    std::fclose(f);
    write_sidecar(field.grid, path, "scalarfield");
}

void dump_vectorfield_csv(const VectorField& field, const std::string& path) {
    std::FILE* f = open_csv(path);
    std::fprintf(f, "index,vx,vy,vz\n");
    for (std::size_t i = 0; i < field.grid.size(); ++i)
        std::fprintf(f, "%zu,%.17g,%.17g,%.17g\n", i, field.comp[0][i],
                     field.comp[1][i], field.comp[2][i]);
    std::fclose(f);
    write_sidecar(field.grid, path, "vectorfield");
}

void dump_trajectory_csv(const EvolveResult& traj, const std::string& prefix) {
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_%04zu.csv", s);
        const std::string path = prefix + suffix;
        const WaveField& psi = traj.snapshots[s];
        std::FILE* f = open_csv(path);
        std::fprintf(f, "index,re,im\n");
        for (std::size_t i = 0; i < psi.amp.size(); ++i)
            std::fprintf(f, "%zu,%.17g,%.17g\n", i, psi.amp[i].real(),
                         psi.amp[i].imag());
        std::fclose(f);
        write_sidecar(psi.grid, path, "wavefield", traj.times[s], true);
    }
}

}  // namespace emqm
