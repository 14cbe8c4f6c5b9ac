#include "ghk/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ghk {

Eigen::MatrixXd random_symplectic(int modes, std::mt19937_64& rng, int layers) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-0.8, 0.8);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  for (int layer = 0; layer < layers; ++layer) {
    for (int k = 0; k < modes; ++k) {
      s = phase_rotation(modes, k, angle(rng)) * s;
      s = single_mode_squeezer(modes, k, squeeze(rng)) * s;
    }
    for (int i = 0; i + 1 < modes; ++i) {
      s = beam_splitter(modes, i, i + 1, angle(rng)) * s;
      s = two_mode_squeezer(modes, i, i + 1, 0.5 * squeeze(rng)) * s;
    }
  }
  return s;
}

Eigen::MatrixXd random_local_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-0.8, 0.8);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
  for (int k = 0; k < 2; ++k) {
    s = phase_rotation(2, k, angle(rng)) * single_mode_squeezer(2, k, squeeze(rng)) *
        phase_rotation(2, k, angle(rng)) * s;
  }
  return s;
}

StandardForm random_standard_form(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> b_dist(0.5, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sign(-1.0, 1.0);
  for (;;) {
    StandardForm sf;
    sf.b1 = b_dist(rng);
    sf.b2 = b_dist(rng);
    sf.c = std::sqrt(sf.b1 * sf.b2) * unit(rng);
    sf.d = sf.c * sign(rng);
    if (sf.c < 1e-6) continue;
    const CovarianceMatrix cm = covariance(sf);
    if (is_physical(cm) && symplectic_eigenvalues(cm).min() > 0.5 + 1e-6) return sf;
  }
}

GaussianState random_state(int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> nbar(0.0, 3.0);
  std::normal_distribution<double> shift(0.0, 1.0);
  std::vector<double> nbars(static_cast<std::size_t>(modes));
  for (auto& n : nbars) n = nbar(rng);
  Eigen::VectorXd mean(2 * modes);
  for (Eigen::Index i = 0; i < mean.size(); ++i) mean(i) = shift(rng);
  return transform(thermal_state(nbars), random_symplectic(modes, rng), mean);
}

}  // namespace ghk
