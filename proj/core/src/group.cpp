#include "ccl/group.hpp"

#include "ccl/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ccl {

namespace {

constexpr double kSubspaceTol = 1e-8;

std::string perm_key(const Permutation& p) {
  return std::string(reinterpret_cast<const char*>(p.data()),
                     p.size() * sizeof(std::uint16_t));
}

Permutation compose_perm(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::vector<int> simple_root_indices(const RootSystem& rs) {
  std::vector<int> idx;
  for (const auto& a : rs.simple_roots) {
    const int i = rs.find_root(a, 1e-9);
    if (i < 0) throw InvariantViolation("simple root missing from root list");
    idx.push_back(i);
  }
  return idx;
}

}  // namespace

Matrix matrix_from_permutation(const RootSystem& rs, const Permutation& perm) {
  const int n = rs.n;
  const auto idx = simple_root_indices(rs);
  Matrix a(n, n), b(n, n);
  for (int i = 0; i < n; ++i) {
    a.col(i) = rs.simple_roots[static_cast<std::size_t>(i)];
    b.col(i) = rs.all_roots[perm[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]];
  }
  return b * a.inverse();
}

Permutation permutation_from_matrix(const RootSystem& rs, const Matrix& m,
                                    double eps_root_match) {
  Permutation p(rs.all_roots.size());
  std::vector<bool> hit(rs.all_roots.size(), false);
  for (std::size_t i = 0; i < rs.all_roots.size(); ++i) {
    const int j = rs.find_root(m * rs.all_roots[i], eps_root_match);
    if (j < 0 || hit[static_cast<std::size_t>(j)]) {
      throw InvariantViolation("matrix does not permute the roots");
    }
    hit[static_cast<std::size_t>(j)] = true;
    p[i] = static_cast<std::uint16_t>(j);
  }
  return p;
}

int fixed_space_dim(const GroupElement& w, const ToleranceConfig& tol) {
  const auto n = w.matrix.rows();
  return kernel_dimension(Matrix::Identity(n, n) - w.matrix, tol);
}

int Group::index_of(const Permutation& perm) const {
  auto it = lookup_.find(perm_key(perm));
  return it == lookup_.end() ? -1 : it->second;
}

int Group::compose(int a, int b) const {
  return index_of(compose_perm(element(a).perm, element(b).perm));
}

int Group::inverse(int a) const {
  const auto& p = element(a).perm;
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<std::uint16_t>(i);
  return index_of(inv);
}

void Group::index_elements(const RootSystem& rs, const ToleranceConfig& tol) {
  n_ = rs.n;
  lookup_.clear();
  counts_.assign(static_cast<std::size_t>(n_ + 1), 0);
  fixed_dims_.clear();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto& e = elements_[i];
    if (!lookup_.emplace(perm_key(e.perm), static_cast<int>(i)).second) {
      throw InvariantViolation("duplicate permutation in group");
    }
    e.matrix = matrix_from_permutation(rs, e.perm);
    if (orthogonality_defect(e.matrix) > 1e-9) {
      throw InvariantViolation("group element matrix is not orthogonal");
    }
    for (std::size_t r = 0; r < rs.all_roots.size(); ++r) {
      const Vector img = e.matrix * rs.all_roots[r];
      if ((img - rs.all_roots[e.perm[r]]).lpNorm<Eigen::Infinity>() > tol.eps_root_match) {
        throw InvariantViolation("matrix/permutation mismatch");
      }
    }
    const int k = fixed_space_dim(e, tol);
    fixed_dims_.push_back(k);
    ++counts_[static_cast<std::size_t>(k)];
  }
  simple_ids_.clear();
  for (const auto& a : rs.simple_roots) {
    const Matrix s = Matrix::Identity(n_, n_) - 2.0 * a * a.transpose();
    simple_ids_.push_back(index_of(permutation_from_matrix(rs, s, tol.eps_root_match)));
    if (simple_ids_.back() < 0) throw InvariantViolation("simple reflection missing");
  }
}

Group Group::enumerate(const RootSystem& rs, const EnumerateOptions& options) {
  const auto& tol = options.tol;
  const int n = rs.n;
  std::vector<Permutation> gens;
  for (const auto& a : rs.simple_roots) {
    const Matrix s = Matrix::Identity(n, n) - 2.0 * a * a.transpose();
    gens.push_back(permutation_from_matrix(rs, s, tol.eps_root_match));
  }

  Permutation id(rs.all_roots.size());
  std::iota(id.begin(), id.end(), std::uint16_t{0});

  std::unordered_map<std::string, int> seen;
  std::vector<Permutation> perms{id};
  std::vector<int> lengths{0};
  seen.emplace(perm_key(id), 0);

  std::size_t level_begin = 0;
  int depth = 0;
  while (level_begin < perms.size()) {
    const std::size_t level_end = perms.size();
    std::vector<Permutation> next;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const auto& s : gens) {
        Permutation p = compose_perm(s, perms[i]);
        if (seen.emplace(perm_key(p), -1).second) next.push_back(std::move(p));
      }
    }
    std::sort(next.begin(), next.end());
    ++depth;
    for (auto& p : next) {
      seen[perm_key(p)] = static_cast<int>(perms.size());
      perms.push_back(std::move(p));
      lengths.push_back(depth);
    }
    if (perms.size() > options.max_elements) {
      throw GroupTooLarge("group exceeds " + std::to_string(options.max_elements) +
                          " elements");
    }
    level_begin = level_end;
  }
  return from_permutations(rs, std::move(perms), std::move(lengths), tol);
}

Group Group::from_permutations(const RootSystem& rs, std::vector<Permutation> perms,
                               std::vector<int> word_lengths,
                               const ToleranceConfig& tol) {
  if (perms.size() != word_lengths.size() || perms.empty()) {
    throw InvalidArgument("from_permutations: size mismatch");
  }
  Group g;
  g.elements_.reserve(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (perms[i].size() != rs.all_roots.size()) {
      throw InvalidArgument("from_permutations: permutation has wrong length");
    }
    for (auto v : perms[i]) {
      if (v >= rs.all_roots.size()) throw InvalidArgument("from_permutations: bad index");
    }
    g.elements_.push_back({std::move(perms[i]), Matrix(), word_lengths[i]});
  }
  g.index_elements(rs, tol);
  return g;
}

std::vector<long long> solomon_polynomial(const std::vector<int>& exps) {
  std::vector<long long> poly{1};
  for (int m : exps) {
    std::vector<long long> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i] * m;
    }
    poly = std::move(next);
  }
  return poly;
}

bool solomon_check(const Group& g, const std::vector<int>& exps) {
  const int n = g.rank();
  if (static_cast<int>(exps.size()) != n) {
    throw InvalidArgument("solomon_check: expected " + std::to_string(n) +
                          " exponents, got " + std::to_string(exps.size()));
  }
  const auto poly = solomon_polynomial(exps);
  const auto& counts = g.counts_by_fixed_dim();
  for (int k = 0; k <= n; ++k) {
    if (poly[static_cast<std::size_t>(k)] != counts[static_cast<std::size_t>(n - k)]) return false;
  }
  return true;
}

std::vector<IndexSet> index_subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  IndexSet cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

IndexSet complement(int n, const IndexSet& s) {
  IndexSet out;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  }
  return out;
}

Subspace face_span(const RootSystem& rs, const IndexSet& face) {
  Matrix cols(rs.n, static_cast<Eigen::Index>(face.size()));
  for (std::size_t c = 0; c < face.size(); ++c) {
    cols.col(static_cast<Eigen::Index>(c)) = rs.fundamental_weights[static_cast<std::size_t>(face[c])];
  }
  return Subspace::span_of(rs.n, cols);
}

ElementSet parabolic_subgroup(const RootSystem& rs, const Group& g,
                              const IndexSet& face) {
  const int n = rs.n;
  std::vector<int> gens;
  for (int j : complement(n, face)) gens.push_back(g.simple_reflection_ids()[static_cast<std::size_t>(j)]);

  std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
  std::vector<int> queue{0};
  in[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int s : gens) {
      const int next = g.compose(s, queue[q]);
      if (!in[static_cast<std::size_t>(next)]) {
        in[static_cast<std::size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }
  ElementSet generated(queue.begin(), queue.end());
  std::sort(generated.begin(), generated.end());

  ElementSet fixator;
  for (int w = 0; w < g.order(); ++w) {
    const Matrix& m = g.element(w).matrix;
    bool fixes = true;
    for (int i : face) {
      const Vector& om = rs.fundamental_weights[static_cast<std::size_t>(i)];
      if ((m * om - om).norm() > kSubspaceTol * std::max(1.0, om.norm())) {
        fixes = false;
        break;
      }
    }
    if (fixes) fixator.push_back(w);
  }
  if (fixator != generated) {
    throw InvariantViolation("parabolic subgroup for " + format_index_set(face) +
                             " differs from the pointwise fixator of its span");
  }
  return generated;
}

long long regular_count(const Group& g, const ElementSet& sub,
                        int ambient_subspace_dim) {
  const int target = g.rank() - ambient_subspace_dim;
  return std::count_if(sub.begin(), sub.end(),
                       [&](int w) { return g.fixed_dim(w) == target; });
}

ElementSet normalizer_of_span(const Group& g, const Subspace& s) {
  const Matrix p = orthogonal_projector(s);
  ElementSet out;
  for (int w = 0; w < g.order(); ++w) {
    const Matrix& m = g.element(w).matrix;
    if (s.dim() == 0 ||
        (m * p * m.transpose() - p).cwiseAbs().maxCoeff() <= kSubspaceTol) {
      out.push_back(w);
    }
  }
  return out;
}

std::vector<std::vector<IndexSet>> subspace_orbits(const RootSystem& rs,
                                                   const Group& g, int k) {
  if (k < 0 || k > rs.n) throw InvalidArgument("subspace_orbits: k out of range");
  const auto subsets = index_subsets(rs.n, k);
  const auto count = subsets.size();
  std::vector<Matrix> proj;
  for (const auto& s : subsets) proj.push_back(orthogonal_projector(face_span(rs, s)));

  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int w = 0; w < g.order(); ++w) {
    const Matrix& m = g.element(w).matrix;
    for (std::size_t i = 0; i < count; ++i) {
      const Matrix img = m * proj[i] * m.transpose();
      for (std::size_t j = i + 1; j < count; ++j) {
        if (find(i) == find(j)) continue;
        if ((img - proj[j]).cwiseAbs().maxCoeff() <= kSubspaceTol) {
          parent[find(j)] = find(i);
        }
      }
    }
  }
  std::vector<std::vector<IndexSet>> classes;
  std::vector<int> slot(count, -1);
  // Subsets are already in lexicographic order, so each class's first
  // member is its representative and classes come out sorted by it.
  for (std::size_t i = 0; i < count; ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(slot[root])].push_back(subsets[i]);
  }
  return classes;
}

std::string format_index_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

}  // namespace ccl
