#pragma once

#include <random>

#include <Eigen/Dense>

#include "ghk/states.hpp"
#include "ghk/symplectic.hpp"

namespace ghk {

/// Random element of Sp(2n, R): layers of phase rotations, one-mode
/// squeezers, beam splitters and two-mode squeezers.
Eigen::MatrixXd random_symplectic(int modes, std::mt19937_64& rng, int layers = 3);

/// Random local symplectic S1 (+) S2 on two modes.
Eigen::MatrixXd random_local_symplectic(std::mt19937_64& rng);

/// Physical two-mode standard form with b_j in [1/2, 5] and c >= |d|, drawn
/// and rejected until physical with smallest symplectic eigenvalue above 1/2 + 1e-6.
StandardForm random_standard_form(std::mt19937_64& rng);

/// Random n-mode Gaussian state: thermal occupancies in [0, 3), a random
/// symplectic and a standard normal displacement.
GaussianState random_state(int modes, std::mt19937_64& rng);

}  // namespace ghk
