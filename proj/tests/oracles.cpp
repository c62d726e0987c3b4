#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace oracle {

QMat identity(std::size_t n) {
  QMat m(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat mul(const QMat& a, const QMat& b) {
  QMat c(a.size(), std::vector<mpq_class>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

QMat sub_scaled_identity(const QMat& a, const mpq_class& t) {
  QMat c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i][i] -= t;
  return c;
}

std::size_t rank(QMat m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<QMat> idempotents(const QMat& a, const std::vector<mpq_class>& thetas) {
  std::vector<QMat> out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    QMat e = identity(a.size());
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      if (j == i) continue;
      QMat factor = sub_scaled_identity(a, thetas[j]);
      for (auto& row : factor)
        for (auto& x : row) x /= thetas[i] - thetas[j];
      e = mul(e, factor);
    }
    out.push_back(e);
  }
  return out;
}

std::size_t x_dimension(const std::vector<QMat>& e, std::size_t n) {
  QMat constraints;
  const auto add_family = [&](const std::vector<QMat>& fam) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if ((i > j ? i - j : j - i) <= 1) continue;
        // (E_i X E_j)_{ab} = sum_{k,l} E_i[a][k] X[k][l] E_j[l][b]
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            std::vector<mpq_class> row(n * n, 0);
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t l = 0; l < n; ++l) row[k * n + l] = fam[i][a][k] * fam[j][l][b];
            constraints.push_back(std::move(row));
          }
      }
  };
  add_family(e);
  std::vector<QMat> units;
  for (std::size_t i = 0; i < n; ++i) {
    QMat u(n, std::vector<mpq_class>(n, 0));
    u[i][i] = 1;
    units.push_back(u);
  }
  add_family(units);
  if (constraints.empty()) return n * n;
  return n * n - rank(constraints);
}

QMat to_qmat(const xtrid::Matrix& m) {
  QMat out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).rational();
  return out;
}

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// Inverse of a square residue matrix; false if singular.
bool invert(std::vector<std::vector<u64>> m, u64 p, std::vector<std::vector<u64>>& out) {
  const std::size_t n = m.size();
  out.assign(n, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(m[piv], m[c]);
    std::swap(out[piv], out[c]);
    const u64 inv = inv_mod(m[c][c], p);
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] = m[c][j] * inv % p;
      out[c][j] = out[c][j] * inv % p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const u64 f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = (m[i][j] + p - f * m[c][j] % p) % p;
        out[i][j] = (out[i][j] + p - f * out[c][j] % p) % p;
      }
    }
  }
  return true;
}

bool next_tuple(std::vector<u64>& t, u64 lo, u64 hi) {
  for (std::size_t k = t.size(); k-- > 0;) {
    if (++t[k] < hi) return true;
    t[k] = lo;
  }
  return false;
}

}  // namespace

std::uint64_t count_leonard_pairs(std::uint64_t p, std::size_t d) {
  const std::size_t n = d + 1;
  std::vector<std::vector<u64>> duals;
  {
    std::vector<u64> t(n, 0);
    do {
      auto s = t;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) == s.end()) duals.push_back(t);
    } while (next_tuple(t, 0, p));
  }

  std::uint64_t count = 0;
  std::vector<u64> diag(n, 0), sup(d, 1), sub(d, 1);
  do {
    do {
      do {
        // Eigenvectors by forward substitution; theta is an eigenvalue iff
        // the last row closes up.
        std::vector<std::vector<u64>> columns;
        for (u64 theta = 0; theta < p; ++theta) {
          std::vector<u64> v(n, 0);
          v[0] = 1;
          for (std::size_t k = 0; k + 1 < n; ++k) {
            u64 acc = (theta + p - diag[k]) % p * v[k] % p;
            if (k > 0) acc = (acc + p - sub[k - 1] * v[k - 1] % p) % p;
            v[k + 1] = acc * inv_mod(sup[k], p) % p;
          }
          u64 last = (diag[n - 1] + p - theta) % p * v[n - 1] % p;
          if (n > 1) last = (last + sub[n - 2] * v[n - 2]) % p;
          if (last == 0) columns.push_back(v);
        }
        if (columns.size() != n) continue;
        std::vector<std::vector<u64>> basis(n, std::vector<u64>(n)), inv;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) basis[i][j] = columns[j][i];
        if (!invert(basis, p, inv)) continue;

        for (const auto& t : duals) {
          // M = P^{-1} diag(t) P: the matrix of A* in the eigenbasis of A.
          std::vector<std::vector<bool>> nz(n, std::vector<bool>(n));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              u64 s = 0;
              for (std::size_t k = 0; k < n; ++k) s = (s + inv[i][k] * t[k] % p * basis[k][j]) % p;
              nz[i][j] = s != 0;
            }
          std::vector<std::size_t> perm(n);
          std::iota(perm.begin(), perm.end(), 0);
          bool found = false;
          do {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
              for (std::size_t b = 0; b < n && ok; ++b) {
                const std::size_t dist = a > b ? a - b : b - a;
                if (dist == 1) ok = nz[perm[a]][perm[b]];
                if (dist > 1) ok = !nz[perm[a]][perm[b]];
              }
            found = ok;
          } while (!found && std::next_permutation(perm.begin(), perm.end()));
          if (found) ++count;
        }
      } while (next_tuple(diag, 0, p));
    } while (next_tuple(sub, 1, p));
  } while (next_tuple(sup, 1, p));
  return count;
}

}  // namespace oracle
