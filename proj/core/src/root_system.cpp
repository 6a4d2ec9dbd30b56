#include "ccl/root_system.hpp"

#include "ccl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

namespace ccl {

namespace {

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Rounded coordinate key used for deterministic ordering.
std::vector<long long> order_key(const Vector& v) {
  std::vector<long long> key(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    key[static_cast<std::size_t>(i)] = std::llround(v(i) * 1e9);
  }
  return key;
}

}  // namespace

GroupType GroupType::parse(std::string_view spec) {
  const std::string s = upper(spec);
  if (s.empty()) throw UnsupportedGroup("empty group spec");
  GroupType t;
  if (s.rfind("I2", 0) == 0) {
    if (s.size() < 5 || s[2] != '(' || s.back() != ')') {
      throw UnsupportedGroup("dihedral groups are written I2(m), got '" +
                             std::string(spec) + "'");
    }
    int m = 0;
    if (!parse_int(std::string_view(s).substr(3, s.size() - 4), m)) {
      throw UnsupportedGroup("bad dihedral order in '" + std::string(spec) + "'");
    }
    if (m < 3 || m > 12) {
      throw UnsupportedGroup("I2(m) is supported for 3 <= m <= 12, got m = " +
                             std::to_string(m));
    }
    t.family = Family::I2;
    t.rank = 2;
    t.m = m;
    return t;
  }
  int r = 0;
  if (!parse_int(std::string_view(s).substr(1), r)) {
    throw UnsupportedGroup("unrecognized group spec '" + std::string(spec) + "'");
  }
  t.rank = r;
  switch (s[0]) {
    case 'A':
      t.family = Family::A;
      if (r < 1 || r > 5) throw UnsupportedGroup("A_n supported for 1 <= n <= 5");
      return t;
    case 'B':
      t.family = Family::B;
      if (r < 2 || r > 4) throw UnsupportedGroup("B_n supported for 2 <= n <= 4");
      return t;
    case 'C':
      throw UnsupportedGroup("C" + std::to_string(r) +
                             " has the same reflection group as B" +
                             std::to_string(r) + "; use B" + std::to_string(r));
    case 'D':
      t.family = Family::D;
      if (r == 2) throw UnsupportedGroup("D2 is reducible (A1 x A1)");
      if (r == 3) throw UnsupportedGroup("D3 is the same group as A3; use A3");
      if (r != 4) throw UnsupportedGroup("D_n supported for n = 4 only");
      return t;
    case 'H':
      if (r == 3) { t.family = Family::H3; return t; }
      if (r == 4) { t.family = Family::H4; return t; }
      throw UnsupportedGroup("H_n exists for n = 3, 4 only");
    case 'F':
      if (r == 4) { t.family = Family::F4; return t; }
      throw UnsupportedGroup("F_n exists for n = 4 only");
    case 'E':
      throw UnsupportedGroup("E-type groups are not supported");
    default:
      throw UnsupportedGroup("unrecognized group spec '" + std::string(spec) + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const GroupType& t) { return os << t.name(); }

std::string GroupType::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::I2: return "I2(" + std::to_string(m) + ")";
    case Family::H3: return "H3";
    case Family::F4: return "F4";
    case Family::H4: return "H4";
  }
  return "?";
}

// Diagram labelings:
//   A_n  1 - 2 - ... - n
//   B_n  1 =4= 2 - 3 - ... - n   (the order-4 bond sits at the first node)
//   D_4  2 is the branch node joined to 1, 3, 4
//   I2   1 =m= 2
//   H3   1 =5= 2 - 3,  H4  1 =5= 2 - 3 - 4
//   F4   1 - 2 =4= 3 - 4
std::vector<std::vector<int>> GroupType::coxeter_matrix() const {
  const int n = rank;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  auto bond = [&](int i, int j, int label) { m[i][j] = m[j][i] = label; };
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1, 3);
      break;
    case Family::B:
      bond(0, 1, 4);
      for (int i = 1; i + 1 < n; ++i) bond(i, i + 1, 3);
      break;
    case Family::D:
      bond(0, 1, 3);
      bond(1, 2, 3);
      bond(1, 3, 3);
      break;
    case Family::I2:
      bond(0, 1, this->m);
      break;
    case Family::H3:
    case Family::H4:
      bond(0, 1, 5);
      for (int i = 1; i + 1 < n; ++i) bond(i, i + 1, 3);
      break;
    case Family::F4:
      bond(0, 1, 3);
      bond(1, 2, 4);
      bond(2, 3, 3);
      break;
  }
  return m;
}

std::vector<int> GroupType::exponents() const {
  std::vector<int> e;
  switch (family) {
    case Family::A:
      for (int i = 1; i <= rank; ++i) e.push_back(i);
      break;
    case Family::B:
      for (int i = 1; i <= rank; ++i) e.push_back(2 * i - 1);
      break;
    case Family::D:
      for (int i = 1; i < rank; ++i) e.push_back(2 * i - 1);
      e.push_back(rank - 1);
      std::sort(e.begin(), e.end());
      break;
    case Family::I2:
      e = {1, m - 1};
      break;
    case Family::H3:
      e = {1, 5, 9};
      break;
    case Family::F4:
      e = {1, 5, 7, 11};
      break;
    case Family::H4:
      e = {1, 11, 19, 29};
      break;
  }
  return e;
}

long long GroupType::expected_order() const {
  switch (family) {
    case Family::A: return factorial(rank + 1);
    case Family::B: return (1LL << rank) * factorial(rank);
    case Family::D: return (1LL << (rank - 1)) * factorial(rank);
    case Family::I2: return 2LL * m;
    case Family::H3: return 120;
    case Family::F4: return 1152;
    case Family::H4: return 14400;
  }
  return 0;
}

int GroupType::expected_root_count() const {
  switch (family) {
    case Family::A: return rank * (rank + 1);
    case Family::B: return 2 * rank * rank;
    case Family::D: return 2 * rank * (rank - 1);
    case Family::I2: return 2 * m;
    case Family::H3: return 30;
    case Family::F4: return 48;
    case Family::H4: return 120;
  }
  return 0;
}

std::vector<GroupType> supported_groups(bool with_h4) {
  std::vector<GroupType> out;
  for (int r = 1; r <= 5; ++r) out.push_back({Family::A, r, 0});
  for (int r = 2; r <= 4; ++r) out.push_back({Family::B, r, 0});
  out.push_back({Family::D, 4, 0});
  for (int m = 3; m <= 12; ++m) out.push_back({Family::I2, 2, m});
  out.push_back({Family::H3, 3, 0});
  out.push_back({Family::F4, 4, 0});
  if (with_h4) out.push_back({Family::H4, 4, 0});
  return out;
}

Matrix RootSystem::gram() const {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = simple_roots[i].dot(simple_roots[j]);
  }
  return g;
}

int RootSystem::find_root(const Vector& v, double eps_root_match) const {
  for (std::size_t i = 0; i < all_roots.size(); ++i) {
    if ((all_roots[i] - v).lpNorm<Eigen::Infinity>() <= eps_root_match) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<Vector> generate_roots(const std::vector<Vector>& simple,
                                   const ToleranceConfig& tol,
                                   std::size_t max_vectors) {
  std::vector<Vector> roots;
  auto known = [&](const Vector& v) {
    return std::any_of(roots.begin(), roots.end(), [&](const Vector& r) {
      return (r - v).lpNorm<Eigen::Infinity>() <= tol.eps_root_match;
    });
  };
  std::vector<Vector> frontier;
  for (const auto& a : simple) {
    if (!a.allFinite() || std::abs(a.norm() - 1.0) > 1e-9) {
      throw InvalidArgument("generate_roots: simple roots must be unit vectors");
    }
    for (const Vector& v : {Vector(a), Vector(-a)}) {
      if (!known(v)) {
        roots.push_back(v);
        frontier.push_back(v);
      }
    }
  }
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier) {
      for (const auto& a : simple) {
        Vector r = reflect(v, a);
        if (!known(r)) {
          roots.push_back(r);
          next.push_back(std::move(r));
          if (roots.size() > max_vectors) {
            throw NonFiniteSystem("root closure exceeded " +
                                  std::to_string(max_vectors) + " vectors");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(roots.begin(), roots.end(), [](const Vector& a, const Vector& b) {
    return order_key(a) < order_key(b);
  });
  return roots;
}

std::vector<Vector> fundamental_weights(const std::vector<Vector>& simple,
                                        const ToleranceConfig& tol) {
  const auto n = static_cast<Eigen::Index>(simple.size());
  if (n == 0) return {};
  Matrix a(n, simple.front().size());
  for (Eigen::Index i = 0; i < n; ++i) a.row(i) = simple[i].transpose();
  const Matrix g = a * a.transpose();
  if (rank(g, tol) < n) {
    throw InvalidArgument("fundamental_weights: simple roots are dependent");
  }
  const Matrix w = g.inverse() * a;
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(w.row(i).transpose());
  return out;
}

RootSystem build_root_system(const GroupType& type, const BuildOptions& options) {
  // Re-parse the canonical name so hand-built GroupType values are checked
  // against the same catalog rules.
  const GroupType t = GroupType::parse(type.name());
  if (t.family == Family::H4 && !options.enable_h4) {
    throw FeatureDisabled("H4 is behind an opt-in flag (--enable-h4)");
  }
  options.tol.validate();
  const int n = t.rank;
  const auto cox = t.coxeter_matrix();
  Matrix gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram(i, j) = i == j ? 1.0 : -std::cos(std::numbers::pi / cox[i][j]);
    }
  }
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("Gram matrix is not positive definite");
  }
  const Matrix l = llt.matrixL();

  RootSystem rs;
  rs.type = t;
  rs.n = n;
  for (int i = 0; i < n; ++i) {
    Vector a = l.row(i).transpose();
    a.normalize();
    rs.simple_roots.push_back(std::move(a));
  }
  rs.all_roots = generate_roots(rs.simple_roots, options.tol);
  rs.fundamental_weights = fundamental_weights(rs.simple_roots, options.tol);
  rs.exponents = t.exponents();
  if (static_cast<int>(rs.all_roots.size()) != t.expected_root_count()) {
    throw InvariantViolation("root count " + std::to_string(rs.all_roots.size()) +
                             " differs from the standard count for " + t.name());
  }
  return rs;
}

}  // namespace ccl
