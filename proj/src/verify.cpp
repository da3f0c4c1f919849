#include "qrf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "qrf/error.hpp"
#include "qrf/fixtures.hpp"
#include "qrf/framechange.hpp"
#include "qrf/measurement.hpp"
#include "qrf/opequiv.hpp"
#include "qrf/relativize.hpp"

namespace qrf {

namespace {

constexpr int kMaxTotalDim = 1024;

// Local system dimensions exercised for a group, kept small for large groups.
std::vector<int> system_dims(const FiniteGroup& group) {
  if (group.order() <= 6) return {2, 3};
  if (group.order() <= 8) return {2};
  return {1};
}

std::uint64_t task_seed(std::uint64_t seed, const std::string& name) {
  std::vector<std::uint32_t> words = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : name) words.push_back(c);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void update(Outcome& o, double deviation) {
  o.max_deviation = std::max(o.max_deviation, deviation);
  ++o.trials;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

// Random element of the Hermitian kernel of a context.
Operator kernel_element(const EffectContext& ctx, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector c(ctx.dim() * ctx.dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = normal(rng);
  c -= ctx.span_basis() * (ctx.span_basis().transpose() * c);
  return HermitianBasis(ctx.dim()).from_coordinates(c);
}

Operator basis_projector(int dim, int i) {
  Operator p = Operator::Zero(dim, dim);
  p(i, i) = 1.0;
  return p;
}

// Trial count for checks whose trials cost |G| dense products on H_1 ⊗ H_2.
int heavy_trials(const FiniteGroup& g, int trials) { return g.order() > 8 ? std::min(trials, 3) : trials; }

std::string dim_tag(int d) { return ".d" + std::to_string(d); }

struct Fixture {
  FiniteGroup group;
  int trials;
};

// ---------------------------------------------------------------- covariance

void covariance_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const auto ideal_check = [g](const UnitaryRep& rep) {
    const POVM pvm = canonical_pvm(rep);
    Outcome o;
    update(o, covariance_deviation(pvm, rep));
    const Frame f = classify_frame(rep, pvm);
    require(f.flags().ideal && f.flags().localizable && f.flags().complete,
            "canonical frame not classified ideal, localizable and complete");
    o.trials = g.order() * g.order();
    return o;
  };
  out.push_back({"covariance.left_regular",
                 "the canonical PVM of the left-regular action is covariant and its frame is ideal, "
                 "localizable and complete",
                 [g, ideal_check](std::uint64_t) { return ideal_check(left_regular_rep(g)); }, ""});
  out.push_back({"covariance.left_right",
                 "the canonical PVM of the left-right action is covariant and its frame is ideal, "
                 "localizable and complete",
                 [g, ideal_check](std::uint64_t) { return ideal_check(left_right_rep(g)); }, ""});
  out.push_back({"covariance.coherent_system",
                 "the coherent-state POVM on the constant-free regular space resolves the identity "
                 "and is covariant, with rank-one effects that are not localizable",
                 [g](std::uint64_t) {
                   const Frame f = coherent_system_frame(g);
                   Outcome o;
                   update(o, covariance_deviation(f.povm(), f.rep()));
                   Operator sum = Operator::Zero(f.dim(), f.dim());
                   for (const auto& e : f.povm().effects()) sum += e;
                   update(o, max_abs(sum - Operator::Identity(f.dim(), f.dim())));
                   require(f.flags().principal && (g.order() == 1 || !f.flags().localizable),
                           "coherent frame misclassified");
                   return o;
                 },
                 g.order() < 2 ? "needs a nontrivial group" : ""});
}

// ------------------------------------------------------------ yen invariance

void yen_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  for (int d : system_dims(g)) {
    const std::string tag = dim_tag(d);
    const auto setup = [g, d](std::uint64_t seed) {
      return std::make_pair(ideal_frame(left_regular_rep(g)), rep_of_dim(g, d, seed));
    };
    out.push_back({"yen.invariance" + tag,
                   "relativized operators are invariant under the diagonal action",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const YenMap map(frame, sys);
                     const UnitaryRep diag = tensor(frame.rep(), sys);
                     Outcome o;
                     for (const auto& b : HermitianBasis(d).elements()) {
                       const Operator y = map.apply(b);
                       for (int h = 0; h < g.order(); ++h) update(o, max_abs(diag.act_op(h, y) - y));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"yen.unital" + tag, "relativization maps the identity to the identity",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const int n = frame.dim() * d;
                     Outcome o;
                     update(o, max_abs(yen(frame, sys, Operator::Identity(d, d)) -
                                       Operator::Identity(n, n)));
                     return o;
                   },
                   ""});
    out.push_back({"yen.complete_positivity" + tag,
                   "relativization tensored with the identity on C^k, k <= 3, keeps positive "
                   "operators positive",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const int k = 1 + t % 3;
                       const UnitaryRep extended = tensor(sys, trivial_rep(g, k));
                       const Operator p = random_density(d * k, rng);
                       const Operator y = yen(frame, extended, p);
                       Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part(y),
                                                                       Eigen::EigenvaluesOnly);
                       update(o, std::max(0.0, -solver.eigenvalues().minCoeff()));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"yen.duality" + tag,
                   "the relative-state map is the trace dual of relativization",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const YenMap map(frame, sys);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = random_density(frame.dim() * d, rng);
                       const Operator a = random_hermitian(d, rng);
                       update(o, std::abs(trace_product(map.predual(omega), a) -
                                          trace_product(omega, map.apply(a))));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"yen.isometry" + tag,
                   "relativization by a localizable frame preserves operator norms",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const YenMap map(frame, sys);
                     Rng rng(seed);
                     Outcome o;
                     auto ops = HermitianBasis(d).elements();
                     for (int t = 0; t < trials; ++t) ops.push_back(random_hermitian(d, rng));
                     for (const auto& a : ops) update(o, std::abs(op_norm(map.apply(a)) - op_norm(a)));
                     return o;
                   },
                   ""});
    out.push_back({"yen.multiplicative" + tag, "relativization by a sharp frame is multiplicative",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const YenMap map(frame, sys);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator a = random_hermitian(d, rng);
                       const Operator b = random_hermitian(d, rng);
                       update(o, max_abs(map.apply(a * b) - map.apply(a) * map.apply(b)));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"yen.invariant_input" + tag,
                   "an invariant system operator A relativizes to I ⊗ A",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator a = g_twirl(sys, random_hermitian(d, rng));
                       const Operator expected = kron(Operator::Identity(frame.dim(), frame.dim()), a);
                       update(o, max_abs(yen(frame, sys, a) - expected));
                     }
                     return o;
                   },
                   ""});
  }

  // Homogeneous relativization over the first proper nontrivial subgroup.
  std::optional<Subgroup> sub;
  for (const auto& h : small_subgroups(g)) {
    if (!h.is_trivial() && h.order() < g.order()) {
      sub = h;
      break;
    }
  }
  const int d = system_dims(g).front();
  out.push_back(
      {"yen.homogeneous",
       "relativization over a coset space is independent of coset representatives and invariant "
       "under the diagonal action",
       [=](std::uint64_t seed) {
         const CosetSpace space(g, *sub);
         const Frame frame = classify_frame(coset_permutation_rep(space), coset_pvm(space));
         const UnitaryRep sys = rep_of_dim(g, d, seed);
         const UnitaryRep diag = tensor(frame.rep(), sys);
         Rng rng(seed);
         const auto h_twirl = [&](const Operator& a) {
           Operator s = Operator::Zero(d, d);
           for (int h : sub->members()) s += sys.act_op(h, a);
           return Operator(s / static_cast<double>(sub->order()));
         };
         Outcome o;
         for (int t = 0; t < trials; ++t) {
           const Operator a = h_twirl(random_hermitian(d, rng));
           const Operator base = yen_homogeneous(frame, sys, a);
           for (int h = 0; h < g.order(); ++h) update(o, max_abs(diag.act_op(h, base) - base));
           std::vector<int> reps;
           for (int c = 0; c < space.size(); ++c) {
             const auto members = space.members(c);
             std::uniform_int_distribution<int> pick(0, static_cast<int>(members.size()) - 1);
             reps.push_back(members[pick(rng)]);
           }
           update(o, max_abs(yen_homogeneous(frame, sys, a, reps) - base));
         }
         // Whether the relativized H-invariant operators exhaust framed ∩ invariant.
         std::vector<Operator> gens;
         for (const auto& b : HermitianBasis(d).elements()) {
           gens.push_back(yen_homogeneous(frame, sys, h_twirl(b)));
         }
         const auto rel = make_context(frame.dim() * d, std::move(gens));
         const auto both = intersect(framed_subspace(frame, d), invariant_subspace(diag));
         const bool equal = rel.rank() == both.rank() && inclusion_residual(both, rel) <= 1e-9;
         o.observations.emplace_back("yen.homogeneous.exhausts_framed_invariant",
                                     equal ? "equal" : "not equal");
         return o;
       },
       sub ? "" : "group has no proper nontrivial subgroup"});
}

// ------------------------------------------------------------ exhaustiveness

void exhaustiveness_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  for (int d : system_dims(g)) {
    const std::string tag = dim_tag(d);
    out.push_back(
        {"exhaustiveness" + tag,
         "for a localizable principal frame the relativized operators span exactly the framed "
         "invariant operators",
         [=](std::uint64_t seed) {
           const Frame frame = ideal_frame(left_regular_rep(g));
           const UnitaryRep sys = rep_of_dim(g, d, seed);
           const YenMap map(frame, sys);
           std::vector<Operator> gens;
           for (const auto& b : HermitianBasis(d).elements()) gens.push_back(map.apply(b));
           const auto rel = make_context(frame.dim() * d, std::move(gens));
           const auto both =
               intersect(framed_subspace(frame, d), invariant_subspace(tensor(frame.rep(), sys)));
           require(rel.rank() == both.rank(), "rank mismatch: relativized " +
                                                  std::to_string(rel.rank()) + ", framed ∩ invariant " +
                                                  std::to_string(both.rank()));
           Outcome o;
           update(o, inclusion_residual(rel, both));
           update(o, inclusion_residual(both, rel));
           return o;
         },
         ""});
    out.push_back({"exhaustiveness.framed_inclusion" + tag,
                   "relativized operators are framed by the reference frame",
                   [=](std::uint64_t seed) {
                     const Frame frame = ideal_frame(left_regular_rep(g));
                     const UnitaryRep sys = rep_of_dim(g, d, seed);
                     std::vector<Operator> gens;
                     for (const auto& b : HermitianBasis(d).elements()) gens.push_back(yen(frame, sys, b));
                     Outcome o;
                     update(o, inclusion_residual(make_context(frame.dim() * d, std::move(gens)),
                                                  framed_subspace(frame, d)));
                     return o;
                   },
                   ""});
  }
  const int d = system_dims(g).front();
  out.push_back({"exhaustiveness.coherent_inclusion",
                 "for a non-localizable frame the relativized operators lie in the framed "
                 "invariant operators",
                 [=](std::uint64_t seed) {
                   const Frame frame = coherent_system_frame(g);
                   const UnitaryRep sys = rep_of_dim(g, d, seed);
                   std::vector<Operator> gens;
                   for (const auto& b : HermitianBasis(d).elements()) gens.push_back(yen(frame, sys, b));
                   const auto both = intersect(framed_subspace(frame, d),
                                               invariant_subspace(tensor(frame.rep(), sys)));
                   Outcome o;
                   update(o, inclusion_residual(make_context(frame.dim() * d, std::move(gens)), both));
                   return o;
                 },
                 g.order() < 2 ? "needs a nontrivial group" : ""});
}

// -------------------------------------------------------------- conditioning

void conditioning_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  for (int d : system_dims(g)) {
    const std::string tag = dim_tag(d);
    const auto setup = [g, d](std::uint64_t seed) {
      return std::make_pair(ideal_frame(left_regular_rep(g)), rep_of_dim(g, d, seed));
    };
    out.push_back({"conditioning.localized" + tag,
                   "conditioning on the frame localized at the identity returns the operator "
                   "unchanged",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     const Operator omega = localizing_state(frame, g.identity());
                     Rng rng(seed);
                     Outcome o;
                     auto ops = HermitianBasis(d).elements();
                     for (int t = 0; t < trials; ++t) ops.push_back(random_hermitian(d, rng));
                     for (const auto& a : ops) update(o, max_abs(conditioned_yen(frame, sys, omega, a) - a));
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.invariant_state" + tag,
                   "conditioning on an invariant frame state is the group twirl",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = g_twirl_predual(frame.rep(), random_density(frame.dim(), rng));
                       const Operator a = random_hermitian(d, rng);
                       update(o, max_abs(conditioned_yen(frame, sys, omega, a) - g_twirl(sys, a)));
                       const Operator rho = random_density(d, rng);
                       update(o, max_abs(product_relative_state(frame, sys, omega, rho) -
                                         g_twirl_predual(sys, rho)));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.born_dependence" + tag,
                   "conditioning depends on the frame state only through its Born distribution",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = random_density(frame.dim(), rng);
                       // Same statistics under the canonical PVM: the dephased state.
                       const Operator dephased = omega.diagonal().asDiagonal();
                       const Operator a = random_hermitian(d, rng);
                       update(o, max_abs(conditioned_yen(frame, sys, omega, a) -
                                         conditioned_yen(frame, sys, dephased, a)));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.product_form" + tag,
                   "the product-relative state is the relative state of the product ω ⊗ ρ",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = random_density(frame.dim(), rng);
                       const Operator rho = random_density(d, rng);
                       update(o, max_abs(product_relative_state(frame, sys, omega, rho) -
                                         yen_predual(frame, sys, kron(omega, rho))));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.symmetry" + tag,
                   "moving the frame state by h equals moving the system state by h^-1",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = random_density(frame.dim(), rng);
                       const Operator rho = random_density(d, rng);
                       for (int h = 0; h < g.order(); ++h) {
                         const Operator lhs =
                             product_relative_state(frame, sys, frame.rep().act_state(h, omega), rho);
                         const Operator rhs = product_relative_state(
                             frame, sys, omega, sys.act_state(g.inverse(h), rho));
                         update(o, max_abs(lhs - rhs));
                       }
                     }
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.invariant_system" + tag,
                   "an invariant system state is its own product-relative state for every frame "
                   "state",
                   [=](std::uint64_t seed) {
                     const auto [frame, sys] = setup(seed);
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator rho = g_twirl_predual(sys, random_density(d, rng));
                       const Operator omega = random_density(frame.dim(), rng);
                       update(o, max_abs(product_relative_state(frame, sys, omega, rho) - rho));
                     }
                     return o;
                   },
                   ""});
    out.push_back({"conditioning.restriction" + tag,
                   "restriction sends A_R ⊗ A_S to tr[ω A_R] A_S and is trace dual to ρ -> ω ⊗ ρ",
                   [=](std::uint64_t seed) {
                     const int dr = g.order();
                     Rng rng(seed);
                     Outcome o;
                     for (int t = 0; t < trials; ++t) {
                       const Operator omega = random_density(dr, rng);
                       const Operator ar = random_hermitian(dr, rng);
                       const Operator as = random_hermitian(d, rng);
                       update(o, max_abs(restrict(omega, kron(ar, as)) - trace_product(omega, ar) * as));
                       const Operator a = random_hermitian(dr * d, rng);
                       const Operator rho = random_density(d, rng);
                       update(o, std::abs(trace_product(rho, restrict(omega, a)) -
                                          trace_product(kron(omega, rho), a)));
                     }
                     return o;
                   },
                   ""});
  }
}

// -------------------------------------------------------- relative orientation

// Second frame for two-frame checks: a non-sharp coherent frame where its
// dense representation stays cheap, the left-right frame otherwise.
Frame second_frame(const FiniteGroup& g) {
  return g.order() >= 2 && g.order() <= 8 ? coherent_system_frame(g) : ideal_frame(left_right_rep(g));
}

void orientation_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  out.push_back({"relative_orientation.localized",
                 "frames localized at e and at h have relative orientation exactly h",
                 [=](std::uint64_t) {
                   const Frame f1 = ideal_frame(left_regular_rep(g));
                   const Frame f2 = ideal_frame(left_right_rep(g));
                   const POVM rel = relative_orientation(f1, f2);
                   const Operator omega = localizing_state(f1, g.identity());
                   const Operator rho = localizing_state(f2, g.identity());
                   Outcome o;
                   for (int h = 0; h < g.order(); ++h) {
                     const RealVector mu =
                         born(rel, kron(omega, f2.rep().act_state(g.inverse(h), rho)));
                     for (int x = 0; x < g.order(); ++x) update(o, std::abs(mu(x) - (x == h ? 1.0 : 0.0)));
                   }
                   return o;
                 },
                 ""});
  out.push_back({"relative_orientation.swap",
                 "E_2 * E_1 (x) is E_1 * E_2 (x^-1) with the tensor factors exchanged",
                 [=](std::uint64_t) {
                   const Frame f1 = ideal_frame(left_regular_rep(g));
                   const Frame f2 = second_frame(g);
                   const POVM a = relative_orientation(f1, f2);
                   const POVM b = relative_orientation(f2, f1);
                   const FactorShape shape{f2.dim(), f1.dim()};
                   Outcome o;
                   for (int x = 0; x < g.order(); ++x) {
                     update(o, max_abs(a.effect(x) -
                                       permute_factors(b.effect(g.inverse(x)), shape, {1, 0})));
                   }
                   return o;
                 },
                 ""});
  out.push_back({"relative_orientation.invariance",
                 "relative-orientation statistics are unchanged by a joint group action",
                 [=](std::uint64_t seed) {
                   const Frame f1 = ideal_frame(left_regular_rep(g));
                   const Frame f2 = second_frame(g);
                   const POVM rel = relative_orientation(f1, f2);
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < heavy_trials(g, trials); ++t) {
                     const Operator omega = random_density(f1.dim(), rng);
                     const Operator rho = random_density(f2.dim(), rng);
                     const RealVector base = born(rel, kron(omega, rho));
                     for (int h = 0; h < g.order(); ++h) {
                       const RealVector moved =
                           born(rel, kron(f1.rep().act_state(h, omega), f2.rep().act_state(h, rho)));
                       update(o, (moved - base).cwiseAbs().maxCoeff());
                     }
                   }
                   return o;
                 },
                 ""});
  const int d = system_dims(g).front();
  out.push_back({"relative_orientation.triangular",
                 "averaging R_1-relative states over the relative orientation gives the "
                 "R_2-relative state of ρ^R_1 ⊗ Ω^R_1",
                 [=](std::uint64_t seed) {
                   const Frame f1 = ideal_frame(left_regular_rep(g));
                   const Frame f2 = second_frame(g);
                   const UnitaryRep sys = rep_of_dim(g, d, seed);
                   const UnitaryRep diag = tensor(f1.rep(), f2.rep());
                   const POVM rel = relative_orientation(f1, f2);
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < heavy_trials(g, trials); ++t) {
                     const Operator omega = g_twirl_predual(diag, random_density(f1.dim() * f2.dim(), rng));
                     const Operator rho1 = random_density(d, rng);
                     const Operator rebuilt = triangular_reconstruction(rel, sys, rho1, omega);
                     const Operator omega_rel = yen_predual(f1, f2.rep(), omega);
                     update(o, max_abs(rebuilt - product_relative_state(f2, sys, omega_rel, rho1)));
                   }
                   return o;
                 },
                 ""});
  out.push_back({"relative_orientation.triangular_localized",
                 "a relative orientation localized at h moves the relative state by h",
                 [=](std::uint64_t seed) {
                   const Frame f1 = ideal_frame(left_regular_rep(g));
                   const Frame f2 = ideal_frame(left_right_rep(g));
                   const UnitaryRep sys = rep_of_dim(g, d, seed);
                   const Operator omega = localizing_state(f1, g.identity());
                   const Operator rho = localizing_state(f2, g.identity());
                   const POVM rel = relative_orientation(f1, f2);
                   Rng rng(seed);
                   const Operator rho1 = random_density(d, rng);
                   Outcome o;
                   for (int h = 0; h < g.order(); ++h) {
                     const Operator joint = kron(omega, f2.rep().act_state(g.inverse(h), rho));
                     update(o, max_abs(triangular_reconstruction(rel, sys, rho1, joint) -
                                       sys.act_state(h, rho1)));
                   }
                   return o;
                 },
                 ""});
}

// -------------------------------------------------------------- frame change

MultiFrameScenario ideal_scenario(const FiniteGroup& g, int frames, const UnitaryRep& sys) {
  const Frame f = ideal_frame(left_right_rep(g));
  return MultiFrameScenario(std::vector<Frame>(frames, f), sys);
}

// Largest system dimension from the list (or 1) keeping H_T within the cap.
int fitting_dim(const FiniteGroup& g, int frames, const std::vector<int>& dims,
                int cap = kMaxTotalDim) {
  int frame_part = 1;
  for (int i = 0; i < frames; ++i) frame_part *= g.order();
  int best = 1;
  for (int d : dims) {
    if (frame_part * d <= cap) best = std::max(best, d);
  }
  return best;
}

bool fits(const FiniteGroup& g, int frames, int d) {
  long total = d;
  for (int i = 0; i < frames; ++i) total *= g.order();
  return total <= kMaxTotalDim;
}

void frame_change_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  const int d = fitting_dim(g, 2, system_dims(g));
  const std::string too_big2 = fits(g, 2, d) ? "" : "two-frame space exceeds 1024 dimensions";
  const auto two = [g, d](std::uint64_t seed) { return ideal_scenario(g, 2, rep_of_dim(g, d, seed)); };

  const int ket_frames = g.order() <= 8 && fits(g, 3, 1) ? 3 : 2;
  out.push_back({"frame_change.kets",
                 "basis kets |h_2>|h_3>... become |h_2^-1>|h_3 h_2^-1>... under the change from "
                 "frame 1 to frame 2",
                 [=](std::uint64_t) {
                   const auto sc = ideal_scenario(g, ket_frames, trivial_rep(g, 1));
                   const int n = g.order();
                   const int rest = ket_frames == 3 ? n : 1;
                   Outcome o;
                   for (int h2 = 0; h2 < n; ++h2) {
                     for (int h3 = 0; h3 < rest; ++h3) {
                       const int in = h2 * rest + h3;
                       const int inv = g.inverse(h2);
                       const int outi = ket_frames == 3 ? inv * n + g.mul(h3, inv) : inv;
                       const Operator got = frame_change_representative(
                           sc, 0, 1, basis_projector(n * rest, in));
                       update(o, max_abs(got - basis_projector(n * rest, outi)));
                     }
                   }
                   return o;
                 },
                 fits(g, 2, 1) ? "" : "two-frame space exceeds 1024 dimensions"});
  out.push_back({"frame_change.well_defined",
                 "inputs differing by an unobservable operator change into equivalent outputs",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto in_ctx = relative_context(sc, 0, {1});
                   const auto out_ctx = relative_context(sc, 1, {0});
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = random_density(in_ctx->dim(), rng);
                     const Operator k = kernel_element(*in_ctx, rng);
                     update(o, out_ctx->pairing_deviation(frame_change_representative(sc, 0, 1, x),
                                                          frame_change_representative(sc, 0, 1, x + k)));
                   }
                   return o;
                 },
                 too_big2});
  out.push_back({"frame_change.diagram",
                 "changing the R_1-relative state of Ω gives the R_2-relative state of Ω up to "
                 "the first frame's effects",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto out_ctx = relative_context(sc, 1, {0});
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator omega = random_density(sc.total_dim(), rng);
                     update(o, out_ctx->pairing_deviation(
                                   relative_state(sc, 1, omega),
                                   frame_change_representative(sc, 0, 1, relative_state(sc, 0, omega))));
                   }
                   return o;
                 },
                 too_big2});
  out.push_back({"frame_change.inverse",
                 "changing from frame 1 to 2 and back is the identity on classes",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto in_ctx = relative_context(sc, 0, {1});
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = random_density(in_ctx->dim(), rng);
                     const Operator back =
                         frame_change_representative(sc, 1, 0, frame_change_representative(sc, 0, 1, x));
                     update(o, in_ctx->pairing_deviation(x, back));
                   }
                   return o;
                 },
                 too_big2});
  out.push_back({"frame_change.affine", "the frame change preserves convex combinations",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto in_ctx = relative_context(sc, 0, {1});
                   const auto out_ctx = relative_context(sc, 1, {0});
                   Rng rng(seed);
                   std::uniform_real_distribution<double> unit(0.0, 1.0);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = random_density(in_ctx->dim(), rng);
                     const Operator y = random_density(in_ctx->dim(), rng);
                     const double l = unit(rng);
                     const Operator mixed = frame_change_representative(sc, 0, 1, l * x + (1 - l) * y);
                     const Operator split = l * frame_change_representative(sc, 0, 1, x) +
                                            (1 - l) * frame_change_representative(sc, 0, 1, y);
                     update(o, out_ctx->pairing_deviation(mixed, split));
                   }
                   return o;
                 },
                 too_big2});
  out.push_back({"frame_change.superposition",
                 "second-frame preparations with equal statistics are changed into the same class",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const Frame& f2 = sc.frame(1);
                   const auto out_ctx = relative_context(sc, 1, {0});
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Vector psi = random_pure_vector(f2.dim(), rng);
                     const RealVector mu = born(f2.povm(), psi * psi.adjoint());
                     Operator mixture = Operator::Zero(f2.dim(), f2.dim());
                     for (int x = 0; x < g.order(); ++x) mixture += mu(x) * f2.effect(x);
                     const Operator sigma = random_density(d, rng);
                     update(o, out_ctx->pairing_deviation(
                                   frame_change_representative(sc, 0, 1, kron(Operator(psi * psi.adjoint()), sigma)),
                                   frame_change_representative(sc, 0, 1, kron(mixture, sigma))));
                   }
                   return o;
                 },
                 too_big2});
  // Three frames: the framed context lives in dimension (|G|^2 d)^2, kept small.
  const int d3 = fitting_dim(g, 3, system_dims(g), 256);
  out.push_back({"frame_change.compose",
                 "changing from 1 to 3 directly agrees with changing via 2, up to the effects of "
                 "frames 1 and 2",
                 [=](std::uint64_t seed) {
                   const auto sc = ideal_scenario(g, 3, rep_of_dim(g, d3, seed));
                   const auto ctx = relative_context(sc, 2, {0, 1});
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = random_density(sc.complement_shape(0).total(), rng);
                     update(o, compose_deviation(sc, 0, 1, 2, x, ctx));
                   }
                   return o;
                 },
                 fits(g, 3, d3) ? "" : "three-frame space exceeds 1024 dimensions"});
  out.push_back({"frame_change.no_system_context",
                 "without a system, framed relative classes are the classes of the "
                 "relative-orientation observable",
                 [=](std::uint64_t) {
                   const auto sc = ideal_scenario(g, 2, trivial_rep(g, 1));
                   const auto ctx = framed_relative_context(sc, 0, 1);
                   const POVM rel = relative_orientation(sc.frame(0), sc.frame(1));
                   const auto obs = make_context(sc.total_dim(), rel.effects());
                   Outcome o;
                   update(o, inclusion_residual(ctx, obs));
                   update(o, inclusion_residual(obs, ctx));
                   return o;
                 },
                 g.order() <= 8 ? "" : "context on H_1 ⊗ H_2 is too large"});
}

// ----------------------------------------------------------------- agreement

void agreement_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  const int d = fitting_dim(g, 2, system_dims(g));
  const std::string too_big = fits(g, 2, d) ? "" : "two-frame space exceeds 1024 dimensions";
  const auto two = [g, d](std::uint64_t seed) { return ideal_scenario(g, 2, rep_of_dim(g, d, seed)); };

  out.push_back({"agreement.ideal",
                 "the localized frame change agrees with conjugation by the coherent unitary up to "
                 "the first frame's effects",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto ctx = relative_context(sc, 1, {0});
                   const int n = sc.complement_shape(0).total();
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = t % 2 == 0 ? random_pure_state(n, rng) : random_density(n, rng);
                     update(o, operational_agreement(sc, 0, 1, x, kDefaultTol, ctx).deviation);
                   }
                   return o;
                 },
                 too_big});
  out.push_back({"agreement.kets_exact",
                 "on basis kets the localized and coherent frame changes give equal matrices",
                 [=](std::uint64_t) {
                   const auto sc = ideal_scenario(g, 2, left_right_rep(g));
                   const Operator v =
                       coherent_frame_change_isometry(sc.frame(0), sc.frame(1), sc.system_rep());
                   const int n = sc.complement_shape(0).total();
                   Outcome o;
                   for (int i = 0; i < n; ++i) {
                     const Operator ket = basis_projector(n, i);
                     update(o, max_abs(frame_change_representative(sc, 0, 1, ket) - v * ket * v.adjoint()));
                   }
                   return o;
                 },
                 fits(g, 3, 1) ? "" : "two frames and a regular system exceed 1024 dimensions"});
  out.push_back({"agreement.luders",
                 "for a superposed second frame the localized change is the Lüders mixture of the "
                 "coherent one",
                 [=](std::uint64_t seed) {
                   const auto sc = two(seed);
                   const auto ctx = relative_context(sc, 1, {0});
                   const int n = g.order();
                   Rng rng(seed);
                   std::uniform_int_distribution<int> pick(0, n - 1);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const int h1 = pick(rng);
                     const int h2 = (h1 + 1 + pick(rng) % std::max(1, n - 1)) % n;
                     const Vector coeffs = random_pure_vector(2, rng);
                     Vector frame2 = Vector::Zero(n);
                     frame2(h1) += coeffs(0);
                     frame2(h2) += coeffs(1);
                     frame2 /= frame2.norm();
                     const Vector sys = random_pure_vector(d, rng);
                     const Vector psi = kron(frame2, sys);
                     const auto r = operational_agreement(sc, 0, 1, psi * psi.adjoint(), kDefaultTol, ctx);
                     update(o, r.luders_deviation);
                     update(o, r.deviation);
                   }
                   return o;
                 },
                 too_big});
  out.push_back({"agreement.coherent_system",
                 "with a coherent-state second frame the localized change agrees with the coherent "
                 "isometry up to the first frame's effects",
                 [=](std::uint64_t seed) {
                   const MultiFrameScenario sc({ideal_frame(left_right_rep(g)), coherent_system_frame(g)},
                                               rep_of_dim(g, d, seed));
                   const auto ctx = relative_context(sc, 1, {0});
                   const int n = sc.complement_shape(0).total();
                   Rng rng(seed);
                   Outcome o;
                   for (int t = 0; t < trials; ++t) {
                     const Operator x = t % 2 == 0 ? random_pure_state(n, rng) : random_density(n, rng);
                     update(o, operational_agreement(sc, 0, 1, x, kDefaultTol, ctx).deviation);
                   }
                   const Operator v = coherent_frame_change_isometry(sc.frame(0), sc.frame(1), sc.system_rep());
                   update(o, max_abs(v.adjoint() * v - Operator::Identity(v.cols(), v.cols())));
                   return o;
                 },
                 g.order() < 2 ? "needs a nontrivial group" : too_big});
  out.push_back({"agreement.unitarity", "the coherent frame change between ideal frames is unitary",
                 [=](std::uint64_t seed) {
                   const Frame f = ideal_frame(left_right_rep(g));
                   const Operator u = coherent_frame_change_unitary(f, f, rep_of_dim(g, d, seed));
                   Outcome o;
                   update(o, max_abs(u * u.adjoint() - Operator::Identity(u.rows(), u.rows())));
                   update(o, max_abs(u.adjoint() * u - Operator::Identity(u.cols(), u.cols())));
                   return o;
                 },
                 too_big});
}

// --------------------------------------------------------------- measurement

void measurement_tasks(const Fixture& fx, std::vector<CheckTask>& out) {
  const FiniteGroup g = fx.group;
  const int trials = fx.trials;
  const std::string too_big = g.order() * g.order() <= kMaxTotalDim ? "" : "fixture exceeds 1024 dimensions";
  out.push_back({"measurement.prc",
                 "the relative-shift scheme reproduces the canonical PVM's probabilities",
                 [=](std::uint64_t) {
                   const CheckResult r = check_prc(canonical_measurement_scheme(g));
                   return Outcome{r.max_deviation, r.trials, {}};
                 },
                 too_big});
  out.push_back({"measurement.rrc",
                 "rotating the pointer state together with its readings reproduces the same "
                 "probabilities",
                 [=](std::uint64_t) {
                   const CheckResult r = check_rrc(canonical_measurement_scheme(g), left_regular_rep(g));
                   return Outcome{r.max_deviation, r.trials, {}};
                 },
                 too_big});
  out.push_back({"measurement.decoupled",
                 "a trivial interaction reproduces the constant POVM of the pointer statistics",
                 [=](std::uint64_t seed) {
                   const auto rep = left_regular_rep(g);
                   const POVM pointer = canonical_pvm(rep);
                   Rng rng(seed);
                   const Operator omega = random_density(g.order(), rng);
                   const RealVector mu = born(pointer, omega);
                   const int ds = 2;
                   std::vector<Operator> effects;
                   for (int x = 0; x < g.order(); ++x) effects.push_back(mu(x) * Operator::Identity(ds, ds));
                   std::vector<int> f(g.order());
                   for (int x = 0; x < g.order(); ++x) f[x] = x;
                   const MeasurementScheme scheme(Operator::Identity(g.order() * ds, g.order() * ds),
                                                  pointer, omega, f,
                                                  POVM(SampleSpace(g), std::move(effects)));
                   const CheckResult r = check_prc(scheme);
                   return Outcome{r.max_deviation, r.trials, {}};
                 },
                 ""});
  out.push_back({"measurement.rrc_precondition",
                 "an interaction that does not commute with the pointer action is rejected",
                 [=](std::uint64_t seed) {
                   const auto base = canonical_measurement_scheme(g);
                   Rng rng(seed);
                   const MeasurementScheme scheme(random_unitary(base.interaction().rows(), rng),
                                                  base.pointer(), base.pointer_state(),
                                                  base.outcome_map(), base.target());
                   try {
                     check_rrc(scheme, left_regular_rep(g));
                   } catch (const PreconditionError&) {
                     return Outcome{0.0, 1, {}};
                   }
                   throw std::runtime_error("non-commuting interaction was accepted");
                 },
                 g.order() < 2 ? "needs a nontrivial group" : too_big});
  out.push_back({"measurement.rrc_relative_orientation",
                 "the relative-orientation observable satisfies relational reproducibility with a "
                 "localized frame",
                 [=](std::uint64_t seed) {
                   const Frame frame = ideal_frame(left_regular_rep(g));
                   Rng rng(seed);
                   Outcome o;
                   std::vector<Frame> targets = {ideal_frame(left_regular_rep(g)),
                                                 ideal_frame(left_right_rep(g))};
                   if (g.order() > 1) targets.push_back(coherent_system_frame(g));
                   for (const auto& target : targets) {
                     std::vector<Operator> states;
                     for (int t = 0; t < trials; ++t) states.push_back(random_density(target.dim(), rng));
                     const CheckResult r = rrc_relative_orientation(frame, target, states);
                     o.max_deviation = std::max(o.max_deviation, r.max_deviation);
                     o.trials += r.trials;
                   }
                   return o;
                 },
                 too_big});
}

using Builder = void (*)(const Fixture&, std::vector<CheckTask>&);

const std::vector<std::pair<std::string, Builder>>& suites() {
  static const std::vector<std::pair<std::string, Builder>> table = {
      {"covariance", covariance_tasks},
      {"yen-invariance", yen_tasks},
      {"exhaustiveness", exhaustiveness_tasks},
      {"conditioning", conditioning_tasks},
      {"relative-orientation", orientation_tasks},
      {"frame-change", frame_change_tasks},
      {"agreement", agreement_tasks},
      {"measurement", measurement_tasks},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, builder] : suites()) out.push_back(name);
  return out;
}

int default_thread_count() {
  if (const char* env = std::getenv("QRF_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CheckRecord> run_checks(const std::vector<CheckTask>& tasks, double tol,
                                    std::uint64_t seed, int threads) {
  std::vector<CheckRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      const CheckTask& task = tasks[i];
      CheckRecord& rec = records[i];
      rec.name = task.name;
      rec.anchor = task.anchor;
      if (!task.skip_reason.empty()) {
        rec.skipped = true;
        rec.pass = true;
        rec.note = task.skip_reason;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        const Outcome o = task.body(task_seed(seed, task.name));
        rec.max_deviation = o.max_deviation;
        rec.trials = o.trials;
        rec.observations = o.observations;
        rec.pass = std::isfinite(o.max_deviation) && o.max_deviation <= tol;
      } catch (const std::exception& e) {
        rec.pass = false;
        rec.note = e.what();
      }
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start).count();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(records.begin(), records.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  return records;
}

int Report::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const auto& c) { return c.pass && !c.skipped; }));
}

int Report::failed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const auto& c) { return !c.pass; }));
}

int Report::skipped() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const auto& c) { return c.skipped; }));
}

Report run_verify(const SuiteConfig& config) {
  if (!(config.tol > 0.0)) throw ArgumentError("verify: tolerance must be positive");
  if (config.trials < 1) throw ArgumentError("verify: trials must be positive");
  std::vector<std::string> selected = config.suites;
  if (selected.empty() || std::find(selected.begin(), selected.end(), "all") != selected.end()) {
    selected = suite_names();
  }
  const auto known = suite_names();
  for (const auto& s : selected) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ArgumentError("verify: unknown suite \"" + s + "\"");
    }
  }
  const Fixture fx{config.group, config.trials};
  std::vector<CheckTask> tasks;
  for (const auto& [name, builder] : suites()) {
    if (std::find(selected.begin(), selected.end(), name) != selected.end()) builder(fx, tasks);
  }
  Report report;
  report.group_name = config.group_name;
  report.group_order = config.group.order();
  report.tol = config.tol;
  report.seed = config.seed;
  report.trials = config.trials;
  const int threads = config.threads > 0 ? config.threads : default_thread_count();
  report.checks = run_checks(tasks, config.tol, config.seed, threads);
  for (const auto& c : report.checks) {
    report.observations.insert(report.observations.end(), c.observations.begin(), c.observations.end());
  }
  return report;
}

Json report_to_json(const Report& report) {
  Json j;
  j["group"] = report.group_name;
  j["order"] = report.group_order;
  j["tolerance"] = report.tol;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["pass"] = c.pass;
    r["skipped"] = c.skipped;
    r["max_deviation"] = c.max_deviation;
    r["trials"] = c.trials;
    r["runtime_ms"] = c.runtime_ms;
    if (!c.note.empty()) r["note"] = c.note;
    checks.push_back(std::move(r));
  }
  j["checks"] = std::move(checks);
  Json obs = Json::object();
  for (const auto& [k, v] : report.observations) obs[k] = v;
  j["observations"] = std::move(obs);
  j["summary"] = {{"total", report.checks.size()},
                  {"passed", report.passed()},
                  {"failed", report.failed()},
                  {"skipped", report.skipped()}};
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out << "name,anchor,pass,skipped,max_deviation,trials,runtime_ms,note\n";
  out.precision(17);
  for (const auto& c : report.checks) {
    out << c.name << ',' << csv_field(c.anchor) << ',' << (c.pass ? "true" : "false") << ','
        << (c.skipped ? "true" : "false") << ',' << c.max_deviation << ',' << c.trials << ','
        << c.runtime_ms << ',' << csv_field(c.note) << '\n';
  }
  return out.str();
}

}  // namespace qrf
