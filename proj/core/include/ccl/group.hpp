#pragma once

#include "ccl/linalg.hpp"
#include "ccl/root_system.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccl {

/// Sorted 0-based indices into the simple roots / fundamental weights.
using IndexSet = std::vector<int>;

/// Sorted indices into Group::elements.
using ElementSet = std::vector<int>;

using Permutation = std::vector<std::uint16_t>;

/// A group element, identified exactly by the permutation it induces on
/// RootSystem::all_roots: root i is mapped to root perm[i].
struct GroupElement {
  Permutation perm;
  Matrix matrix;
  int word_length = 0;
};

struct EnumerateOptions {
  std::size_t max_elements = 20000;
  ToleranceConfig tol{};
};

class Group {
 public:
  int rank() const { return n_; }
  long long order() const { return static_cast<long long>(elements_.size()); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }

  /// counts_by_fixed_dim()[k] = |{w : dim ker(1 - w) = k}|, k = 0..n.
  const std::vector<long long>& counts_by_fixed_dim() const { return counts_; }
  int fixed_dim(int element) const { return fixed_dims_[static_cast<std::size_t>(element)]; }
  const std::vector<int>& simple_reflection_ids() const { return simple_ids_; }

  /// Index of the element with this permutation, or -1.
  int index_of(const Permutation& perm) const;
  /// Index of a * b (apply b first).
  int compose(int a, int b) const;
  int inverse(int a) const;

  /// BFS over the simple reflections (fixed generator order, each level
  /// sorted lexicographically by permutation). Element 0 is the identity.
  static Group enumerate(const RootSystem& rs, const EnumerateOptions& options = {});

  /// Rebuilds a group from stored permutations (cache reload). Matrices,
  /// fixed dimensions and counts are recomputed; closure is not re-derived
  /// but every permutation must be consistent with an orthogonal map.
  static Group from_permutations(const RootSystem& rs,
                                 std::vector<Permutation> perms,
                                 std::vector<int> word_lengths,
                                 const ToleranceConfig& tol = {});

 private:
  void index_elements(const RootSystem& rs, const ToleranceConfig& tol);

  int n_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<long long> counts_;
  std::vector<int> fixed_dims_;
  std::vector<int> simple_ids_;
  std::unordered_map<std::string, int> lookup_;
};

/// Matrix of the orthogonal map sending simple root i to all_roots[perm[idx_i]].
Matrix matrix_from_permutation(const RootSystem& rs, const Permutation& perm);

/// Permutation of all_roots induced by `m`; throws InvariantViolation if some
/// image is not a root within eps_root_match.
Permutation permutation_from_matrix(const RootSystem& rs, const Matrix& m,
                                    double eps_root_match);

int fixed_space_dim(const GroupElement& w, const ToleranceConfig& tol = {});

/// Exact integer comparison of sum_k |W^{n-k}| t^k with prod_i (1 + m_i t).
/// Throws InvalidArgument when exps.size() != rank.
bool solomon_check(const Group& g, const std::vector<int>& exps);

/// Coefficients of prod_i (1 + m_i t), lowest degree first.
std::vector<long long> solomon_polynomial(const std::vector<int>& exps);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> index_subsets(int n, int k);
IndexSet complement(int n, const IndexSet& s);

/// span(w_i : i in I).
Subspace face_span(const RootSystem& rs, const IndexSet& face);

/// Subgroup generated by s_j, j not in `face`. Also computes the pointwise
/// fixator of span(F_I) and throws InvariantViolation if the two differ.
ElementSet parabolic_subgroup(const RootSystem& rs, const Group& g,
                              const IndexSet& face);

/// Elements of `sub` without nonzero fixed vectors in a complement of
/// dimension `ambient_subspace_dim` on which they act; i.e. elements whose
/// full fixed space has dimension n - ambient_subspace_dim.
long long regular_count(const Group& g, const ElementSet& sub,
                        int ambient_subspace_dim);

/// {w : w S = S}, decided by projector comparison within 1e-8.
ElementSet normalizer_of_span(const Group& g, const Subspace& s);

/// Partition of the k-subsets I by the relation "some w maps span(F_I) onto
/// span(F_J)". Classes are sorted internally and by representative (the
/// lexicographically least member, always front()).
std::vector<std::vector<IndexSet>> subspace_orbits(const RootSystem& rs,
                                                   const Group& g, int k);

/// Label such as "{1,3}" using 1-based indices.
std::string format_index_set(const IndexSet& s);

}  // namespace ccl
