#include "qrf/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "qrf/error.hpp"
#include "qrf/relativize.hpp"

namespace qrf {

MeasurementScheme::MeasurementScheme(Operator interaction, POVM pointer, Operator pointer_state,
                                     std::vector<int> outcome_map, POVM target,
                                     bool require_surjective, double tol)
    : interaction_(std::move(interaction)),
      pointer_(std::move(pointer)),
      pointer_state_(std::move(pointer_state)),
      outcome_map_(std::move(outcome_map)),
      target_(std::move(target)) {
  const int n = pointer_dim() * system_dim();
  if (interaction_.rows() != n || interaction_.cols() != n) {
    throw ArgumentError("measurement scheme: interaction must act on pointer ⊗ system (dimension " +
                        std::to_string(n) + ")");
  }
  if (!is_unitary(interaction_, tol)) throw ArgumentError("measurement scheme: interaction is not unitary");
  if (pointer_state_.rows() != pointer_dim() || !is_density(pointer_state_, tol)) {
    throw ArgumentError("measurement scheme: pointer state is not a density on the pointer space");
  }
  if (static_cast<int>(outcome_map_.size()) != pointer_.size()) {
    throw ArgumentError("measurement scheme: outcome map must assign every pointer reading");
  }
  std::vector<char> hit(target_.size(), 0);
  for (int y : outcome_map_) {
    if (y < 0 || y >= target_.size()) {
      throw ArgumentError("measurement scheme: outcome map value " + std::to_string(y) +
                          " is not a target sample point");
    }
    hit[y] = 1;
  }
  if (require_surjective && std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    throw ArgumentError("measurement scheme: outcome map is not surjective");
  }
}

std::vector<int> MeasurementScheme::preimage(int x) const {
  std::vector<int> out;
  for (int y = 0; y < static_cast<int>(outcome_map_.size()); ++y) {
    if (outcome_map_[y] == x) out.push_back(y);
  }
  return out;
}

namespace {

// U (E_R(y) ⊗ I) U* for every pointer reading y, via a square-root factor of
// each effect so that low-rank effects stay cheap.
std::vector<Operator> pulled_back_effects(const MeasurementScheme& scheme) {
  const Operator& u = scheme.interaction();
  const Operator id = Operator::Identity(scheme.system_dim(), scheme.system_dim());
  std::vector<Operator> out;
  for (const auto& e : scheme.pointer().effects()) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part(e));
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      if (solver.eigenvalues()(i) > 1e-14) cols.push_back(i);
    }
    Operator root(e.rows(), static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) {
      root.col(static_cast<Eigen::Index>(k)) =
          std::sqrt(solver.eigenvalues()(cols[k])) * solver.eigenvectors().col(cols[k]);
    }
    const Operator w = u * kron(root, id);
    out.push_back(w * w.adjoint());
  }
  return out;
}

// Γ_ω(Σ_{y in readings} U (E_R(y) ⊗ I) U*).
Operator pulled_back(const std::vector<Operator>& cache, const Operator& omega,
                     const std::vector<int>& readings, int system_dim) {
  Operator sum = Operator::Zero(system_dim, system_dim);
  for (int y : readings) sum += restrict(omega, cache[y]);
  return sum;
}

}  // namespace

CheckResult check_prc(const MeasurementScheme& scheme, double tol) {
  const auto cache = pulled_back_effects(scheme);
  CheckResult r;
  for (int x = 0; x < scheme.target().size(); ++x) {
    const Operator got =
        pulled_back(cache, scheme.pointer_state(), scheme.preimage(x), scheme.system_dim());
    r.max_deviation = std::max(r.max_deviation, max_abs(got - scheme.target().effect(x)));
    ++r.trials;
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

CommutationDefect commutation_defect(const MeasurementScheme& scheme, const UnitaryRep& pointer_rep) {
  if (pointer_rep.dim() != scheme.pointer_dim()) {
    throw ArgumentError("check_rrc: pointer representation dimension does not match the pointer");
  }
  const Operator& u = scheme.interaction();
  const UnitaryRep lifted = tensor(pointer_rep, trivial_rep(pointer_rep.group(), scheme.system_dim()));
  CommutationDefect d{0.0, pointer_rep.group().identity()};
  for (int g = 0; g < pointer_rep.group().order(); ++g) {
    const double dev = max_abs(u - lifted.act_op(g, u));
    if (dev > d.max_deviation) d = {dev, g};
  }
  return d;
}

CheckResult check_rrc(const MeasurementScheme& scheme, const UnitaryRep& pointer_rep, double tol) {
  const auto defect = commutation_defect(scheme, pointer_rep);
  if (defect.max_deviation > tol) {
    throw PreconditionError("check_rrc: interaction does not commute with the pointer action; "
                            "worst element " + pointer_rep.group().label(defect.worst_element) +
                            " with max |U - V U V*| = " + format_number(defect.max_deviation));
  }
  const SampleSpace& space = scheme.pointer().space();
  const auto cache = pulled_back_effects(scheme);
  CheckResult r;
  for (int h = 0; h < pointer_rep.group().order(); ++h) {
    const Operator u_h = pointer_rep.matrix(h);
    const Operator omega_h = u_h * scheme.pointer_state() * u_h.adjoint();
    for (int x = 0; x < scheme.target().size(); ++x) {
      std::vector<int> shifted;
      for (int y : scheme.preimage(x)) shifted.push_back(space.act(h, y));
      const Operator got = pulled_back(cache, omega_h, shifted, scheme.system_dim());
      r.max_deviation = std::max(r.max_deviation, max_abs(got - scheme.target().effect(x)));
      ++r.trials;
    }
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

CheckResult rrc_relative_orientation(const Frame& frame, const Frame& system_frame,
                                     const std::vector<Operator>& states, double tol) {
  if (!frame.flags().principal || !frame.flags().localizable) {
    throw UnsupportedFrameError("rrc_relative_orientation: frame must be principal and localizable");
  }
  const FiniteGroup& group = frame.group();
  const POVM observable = relative_orientation(frame, system_frame);
  const Operator omega = localizing_state(frame, group.identity());
  CheckResult r;
  for (const auto& rho : states) {
    const RealVector expected = born(system_frame.povm(), rho);
    for (int h = 0; h < group.order(); ++h) {
      const Operator omega_h = frame.rep().act_state(h, omega);
      for (int x = 0; x < group.order(); ++x) {
        // tr[(ω_h ⊗ ρ) F] = tr[ρ restrict(ω_h, F)]
        const int y = group.mul(h, x);
        const double got = trace_product(rho, restrict(omega_h, observable.effect(y))).real();
        r.max_deviation = std::max(r.max_deviation, std::abs(got - expected(x)));
        ++r.trials;
      }
    }
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

Operator relative_shift(const FiniteGroup& group) {
  const int n = group.order();
  Operator u = Operator::Zero(n * n, n * n);
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < n; ++s) u(group.mul(p, group.inverse(s)) * n + s, p * n + s) = 1.0;
  }
  return u;
}

MeasurementScheme canonical_measurement_scheme(const FiniteGroup& group) {
  const auto rep = left_regular_rep(group);
  const POVM pvm = canonical_pvm(rep);
  Operator omega = Operator::Zero(group.order(), group.order());
  omega(group.identity(), group.identity()) = 1.0;
  std::vector<int> f(group.order());
  for (int x = 0; x < group.order(); ++x) f[x] = x;
  return MeasurementScheme(relative_shift(group), pvm, omega, std::move(f), pvm);
}

}  // namespace qrf
