#pragma once

#include <vector>

#include "qrf/fixtures.hpp"
#include "qrf/group.hpp"
#include "qrf/opequiv.hpp"
#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

// Slow, direct implementations used as references for the library.
namespace oracle {

using namespace qrf;

/// (A ⊗ B)(i p + k, j q + l) = A(i, j) B(k, l), entry by entry.
Operator kron(const Operator& a, const Operator& b);

/// tr_B of an operator on C^da ⊗ C^db by summing matrix units.
Operator trace_out_second(const Operator& x, int da, int db);
/// tr_A of an operator on C^da ⊗ C^db.
Operator trace_out_first(const Operator& x, int da, int db);

/// Σ_g E(g) ⊗ U(g) A U(g)* with dense matrices and the entrywise kron.
Operator yen(const Frame& frame, const UnitaryRep& sys, const Operator& a);

/// Trace dual of yen built column by column from the images of matrix units:
/// out(l, k) = tr[Ω yen(|k><l|)].
Operator yen_predual(const Frame& frame, const UnitaryRep& sys, const Operator& omega);

/// Real vector (Re A, Im A) stacked column-major, 2 n^2 entries.
RealVector realify(const Operator& a);

/// Rank of the real span of the operators, by full-pivot LU of their realified
/// coordinates with the given threshold.
int span_rank(const std::vector<Operator>& ops, double threshold = 1e-9);

/// Hermitian operators orthogonal to every generator (a basis of the kernel of
/// the pairing), by the LU kernel of the realified generator matrix.
std::vector<Operator> kernel_basis(int dim, const std::vector<Operator>& generators);

/// max_F |tr[(a - b) F]| over the generators with explicit index sums.
double pairing(const std::vector<Operator>& generators, const Operator& a, const Operator& b);

/// Rank of span(a) ∩ span(b) from the eigenvalue-2 space of P_a + P_b.
int intersection_rank(const EffectContext& a, const EffectContext& b);

/// Left cosets gH enumerated directly, each sorted, in order of first element.
std::vector<std::vector<int>> cosets(const FiniteGroup& group, const std::vector<int>& subgroup);

/// Closure of a generating set by repeated multiplication.
std::vector<int> closure(const FiniteGroup& group, const std::vector<int>& generators);

}  // namespace oracle

namespace gen {

using qrf::Rng;

/// Groups every property is exercised on.
std::vector<qrf::FiniteGroup> suite_groups();

/// A random element of the group.
int element(const qrf::FiniteGroup& g, Rng& rng);

/// A random subset of the group elements (possibly empty).
std::vector<int> subset(const qrf::FiniteGroup& g, Rng& rng);

}  // namespace gen
