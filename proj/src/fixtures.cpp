#include "qrf/fixtures.hpp"

#include <cmath>

#include "qrf/error.hpp"

namespace qrf {

Operator ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Operator random_unitary(int dim, Rng& rng) {
  const Operator z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Operator> qr(z);
  Operator q = qr.householderQ() * Operator::Identity(dim, dim);
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Vector random_pure_vector(int dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Operator random_pure_state(int dim, Rng& rng) {
  const Vector v = random_pure_vector(dim, rng);
  return v * v.adjoint();
}

Operator random_density(int dim, Rng& rng, int rank) {
  const Operator g = ginibre(dim, rank > 0 ? rank : dim, rng);
  const Operator rho = g * g.adjoint();
  return hermitian_part(rho / rho.trace().real());
}

Operator random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const HermitianBasis basis(dim);
  RealVector c(basis.size());
  for (int k = 0; k < basis.size(); ++k) c(k) = normal(rng);
  return basis.from_coordinates(c);
}

Operator constant_complement_basis(int n) {
  if (n < 2) throw ArgumentError("constant_complement_basis: needs n >= 2");
  // The last n - 1 columns of a unitary whose first column is constant.
  Operator seed = Operator::Identity(n, n);
  seed.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::HouseholderQR<Operator> qr(seed);
  const Operator full = qr.householderQ() * Operator::Identity(n, n);
  return full.rightCols(n - 1);
}

UnitaryRep reduced_coset_rep(const CosetSpace& space) {
  const int n = space.size();
  if (n < 2) throw ArgumentError("reduced_coset_rep: needs at least two cosets");
  const Operator q = constant_complement_basis(n);
  const auto perm = coset_permutation_rep(space);
  std::vector<Operator> mats;
  for (int g = 0; g < space.group().order(); ++g) mats.push_back(q.adjoint() * perm.matrix(g) * q);
  return UnitaryRep::from_matrices(space.group(), std::move(mats), RepKind::Custom);
}

UnitaryRep rep_of_dim(const FiniteGroup& group, int dim, std::uint64_t seed, bool scramble) {
  if (dim < 1) throw ArgumentError("rep_of_dim: dimension must be positive");
  Rng rng(seed);
  std::vector<CosetSpace> spaces;
  for (const auto& h : small_subgroups(group)) {
    if (h.order() < group.order()) spaces.emplace_back(group, h);
  }
  UnitaryRep rep = trivial_rep(group, 1);
  bool started = false;
  int remaining = dim;
  while (remaining > 0) {
    // Candidate blocks: (space index, reduced?) that still fit.
    std::vector<std::pair<int, bool>> fits;
    for (int i = 0; i < static_cast<int>(spaces.size()); ++i) {
      const int n = spaces[i].size();
      if (n <= remaining) fits.emplace_back(i, false);
      if (n - 1 <= remaining) fits.emplace_back(i, true);
    }
    UnitaryRep block = trivial_rep(group, remaining);
    if (!fits.empty()) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(fits.size()) - 1);
      const auto [i, reduced] = fits[pick(rng)];
      block = reduced ? reduced_coset_rep(spaces[i]) : coset_permutation_rep(spaces[i]);
    }
    remaining -= block.dim();
    rep = started ? direct_sum(rep, block) : block;
    started = true;
  }
  if (!scramble) return rep;
  return conjugated(rep, random_unitary(dim, rng));
}

Frame coherent_system_frame(const FiniteGroup& group) {
  if (group.order() < 2) throw ArgumentError("coherent_system_frame: group is trivial");
  const UnitaryRep rep = reduced_coset_rep(CosetSpace(group, Subgroup::trivial(group)));
  const Operator q = constant_complement_basis(group.order());
  const Vector seed = q.adjoint().col(group.identity());
  return classify_frame(rep, coherent_state_povm(rep, seed));
}

std::vector<std::string> suite_group_names() { return {"z2", "z3", "z4", "z5", "z6", "d4", "s3"}; }

}  // namespace qrf
