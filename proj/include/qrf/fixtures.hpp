#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qrf/group.hpp"
#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex normal.
Operator ginibre(int rows, int cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Operator random_unitary(int dim, Rng& rng);
Vector random_pure_vector(int dim, Rng& rng);
Operator random_pure_state(int dim, Rng& rng);
/// G G* / tr with G a dim x rank Ginibre matrix; rank = 0 means full rank.
Operator random_density(int dim, Rng& rng, int rank = 0);
/// Hermitian with i.i.d. normal coordinates in the Hermitian basis.
Operator random_hermitian(int dim, Rng& rng);

/// n x (n-1) matrix with orthonormal columns spanning the complement of (1, ..., 1).
Operator constant_complement_basis(int n);

/// Permutation representation on G/H restricted to the orthogonal complement
/// of the constant vector (dimension |G/H| - 1).
UnitaryRep reduced_coset_rep(const CosetSpace& space);

/// A representation of the requested dimension built as a direct sum of coset
/// permutation representations and their reduced parts (chosen by the seed),
/// padded with the trivial representation, then conjugated by a seeded Haar
/// unitary unless `scramble` is false.
UnitaryRep rep_of_dim(const FiniteGroup& group, int dim, std::uint64_t seed, bool scramble = true);

/// Principal frame on the complement of the constants in L2(G) (dimension
/// |G| - 1) with the coherent-state POVM generated by the projected |e>.
/// Rank-one effects of norm 1 - 1/|G|: not sharp, not localizable.
/// Throws ArgumentError for the trivial group.
Frame coherent_system_frame(const FiniteGroup& group);

/// Groups every proposition suite is exercised on.
std::vector<std::string> suite_group_names();

}  // namespace qrf
