// doctest's Approx adds a default scale of 1.0, which silences relative
// comparisons between values far below unity (energies in joules, lengths in
// meters). rel() removes the additive scale so epsilon acts relatively.

#pragma once

#include <doctest.h>

inline doctest::Approx rel(double value, double epsilon) {
    return doctest::Approx(value).epsilon(epsilon).scale(0.0);
}
