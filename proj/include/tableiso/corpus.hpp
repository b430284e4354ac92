#pragma once

// Constructors for the bundled corpus of groups and rings, driven by small
// whitespace-separated spec strings:
//
//   groups: cyclic k | elementary p k | dihedral k | quaternion k
//           | symmetric k | heisenberg p | semidirect m k r
//           | small16 i | product <spec> <spec>
//   rings:  zmod k | gf q | dual p | evens m | product <spec> <spec>
//
// dihedral k has order 2k; quaternion k is the generalized quaternion group
// of order k (a power of two, at least 8); semidirect m k r is Z_m x| Z_k
// with the generator of Z_k acting as x -> x^r; small16 i is the i-th of the
// fourteen groups of order 16 (1 <= i <= 14); gf q is the field with q in
// {4, 8, 9}; dual p is Z_p[x]/(x^2); evens m is the non-unital ring of even
// residues mod an even m. Every constructed table passes full validation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/errors.hpp"
#include "tableiso/ring.hpp"

namespace tableiso {

namespace detail {

inline void check_order(long long n, int max_order, const std::string& what) {
  if (n > max_order)
    fail(errc::too_large, what + " has order " + std::to_string(n) + ", cap is " +
                              std::to_string(max_order));
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

struct SpecParser {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  explicit SpecParser(const std::string& spec) {
    std::string cur;
    for (char c : spec) {
      if (c == ' ' || c == '\t' || c == '\n') {
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
  }

  bool done() const { return pos >= tokens.size(); }

  std::string next(const char* what) {
    if (done()) fail(errc::syntax_error, std::string("spec ended early, expected ") + what);
    return tokens[pos++];
  }

  int next_int(const char* what) {
    std::string tok = next(what);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      fail(errc::syntax_error, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size() || v < 0)
      fail(errc::syntax_error, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
  }
};

inline CayleyTable table_from(int n, const std::vector<std::vector<int>>& raw) {
  return validate_cayley_table(n, raw);
}

inline CayleyTable build_cyclic(int k) {
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(k),
                                    std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
  return table_from(k, raw);
}

inline CayleyTable build_elementary(int p, int k, int n) {
  auto add = [&](int a, int b) {
    int out = 0, mult = 1;
    for (int i = 0; i < k; ++i) {
      out += ((a % p + b % p) % p) * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return out;
  };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = add(a, b);
  return table_from(n, raw);
}

inline CayleyTable build_dihedral(int k) {
  int n = 2 * k;
  auto enc = [&](int i, int s) { return s * k + ((i % k) + k) % k; };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int s1 = 0; s1 < 2; ++s1)
    for (int i1 = 0; i1 < k; ++i1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int i2 = 0; i2 < k; ++i2)
          raw[static_cast<std::size_t>(enc(i1, s1))][static_cast<std::size_t>(enc(i2, s2))] =
              enc(i1 + (s1 ? -i2 : i2), s1 ^ s2);
  return table_from(n, raw);
}

inline CayleyTable build_quaternion(int n) {
  int half = n / 2, quarter = n / 4;
  auto enc = [&](int i, int s) { return s * half + ((i % half) + half) % half; };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int s1 = 0; s1 < 2; ++s1)
    for (int i1 = 0; i1 < half; ++i1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int i2 = 0; i2 < half; ++i2)
          raw[static_cast<std::size_t>(enc(i1, s1))][static_cast<std::size_t>(enc(i2, s2))] =
              enc(i1 + (s1 ? -i2 : i2) + ((s1 && s2) ? quarter : 0), s1 ^ s2);
  return table_from(n, raw);
}

inline CayleyTable build_symmetric(int k) {
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, int> rank;
  for (std::size_t i = 0; i < perms.size(); ++i) rank[perms[i]] = static_cast<int>(i);
  int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<int> composed(static_cast<std::size_t>(k));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int x = 0; x < k; ++x)
        composed[static_cast<std::size_t>(x)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = rank[composed];
    }
  return table_from(n, raw);
}

inline CayleyTable build_heisenberg(int p) {
  int n = p * p * p;
  auto enc = [&](int a, int b, int c) { return (a % p) * p * p + (b % p) * p + (c % p); };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a1 = 0; a1 < p; ++a1)
    for (int b1 = 0; b1 < p; ++b1)
      for (int c1 = 0; c1 < p; ++c1)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2)
              raw[static_cast<std::size_t>(enc(a1, b1, c1))][static_cast<std::size_t>(
                  enc(a2, b2, c2))] = enc(a1 + a2, b1 + b2, c1 + c2 + a1 * b2);
  return table_from(n, raw);
}

inline CayleyTable build_semidirect(int m, int k, int r) {
  long long rk = 1;
  for (int i = 0; i < k; ++i) rk = (rk * r) % m;
  if (std::gcd(r, m) != 1 || rk % m != 1 % m)
    fail(errc::invalid_order, "semidirect " + std::to_string(m) + " " + std::to_string(k) + " " +
                                  std::to_string(r) + ": need gcd(r,m)=1 and r^k=1 mod m");
  int n = m * k;
  auto enc = [&](int i, int j) { return ((j % k) + k) % k * m + (((i % m) + m) % m); };
  std::vector<long long> rpow(static_cast<std::size_t>(k));
  rpow[0] = 1 % m;
  for (int j = 1; j < k; ++j) rpow[static_cast<std::size_t>(j)] = (rpow[static_cast<std::size_t>(j - 1)] * r) % m;
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int j1 = 0; j1 < k; ++j1)
    for (int i1 = 0; i1 < m; ++i1)
      for (int j2 = 0; j2 < k; ++j2)
        for (int i2 = 0; i2 < m; ++i2)
          raw[static_cast<std::size_t>(enc(i1, j1))][static_cast<std::size_t>(enc(i2, j2))] =
              enc(static_cast<int>((i1 + rpow[static_cast<std::size_t>(j1)] * i2) % m), j1 + j2);
  return table_from(n, raw);
}

inline CayleyTable build_product_group(const CayleyTable& a, const CayleyTable& b) {
  int n = a.n * b.n;
  auto enc = [&](int x, int y) { return x * b.n + y; };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2)
          raw[static_cast<std::size_t>(enc(x1, y1))][static_cast<std::size_t>(enc(x2, y2))] =
              enc(a.mul(x1, x2), b.mul(y1, y2));
  return table_from(n, raw);
}

// the group 3 of order 16, (C4 x C2) x| C2
inline CayleyTable build_small16_3() {
  auto enc = [](int i, int j, int s) {
    return (((i % 4) + 4) % 4) * 4 + (((j % 2) + 2) % 2) * 2 + (((s % 2) + 2) % 2);
  };
  std::vector<std::vector<int>> raw(16, std::vector<int>(16));
  for (int i1 = 0; i1 < 4; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int i2 = 0; i2 < 4; ++i2)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int s2 = 0; s2 < 2; ++s2)
              raw[static_cast<std::size_t>(enc(i1, j1, s1))][static_cast<std::size_t>(
                  enc(i2, j2, s2))] = enc(i1 + i2, j1 + j2 + (s1 ? i2 : 0), s1 + s2);
  return table_from(16, raw);
}

// the central product of C4 and D4, realized by Pauli-style triples
// (a, b, c) in Z4 x Z2 x Z2 with (a1,b1,c1)(a2,b2,c2) =
// (a1 + a2 + 2 c1 b2, b1 ^ b2, c1 ^ c2); the center is C4
inline CayleyTable build_small16_13() {
  auto enc = [](int a, int b, int c) { return (((a % 4) + 4) % 4) * 4 + (b & 1) * 2 + (c & 1); };
  std::vector<std::vector<int>> raw(16, std::vector<int>(16));
  for (int a1 = 0; a1 < 4; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int a2 = 0; a2 < 4; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2)
              raw[static_cast<std::size_t>(enc(a1, b1, c1))][static_cast<std::size_t>(
                  enc(a2, b2, c2))] = enc(a1 + a2 + 2 * c1 * b2, b1 ^ b2, c1 ^ c2);
  return table_from(16, raw);
}

inline CayleyTable parse_group(SpecParser& parser, int max_order);

inline CayleyTable build_small16(int i, int max_order) {
  auto sub = [&](const std::string& spec) {
    SpecParser p(spec);
    return parse_group(p, max_order);
  };
  switch (i) {
    case 1: return sub("cyclic 16");
    case 2: return sub("product cyclic 4 cyclic 4");
    case 3: return build_small16_3();
    case 4: return sub("semidirect 4 4 3");
    case 5: return sub("product cyclic 8 cyclic 2");
    case 6: return sub("semidirect 8 2 5");
    case 7: return sub("dihedral 8");
    case 8: return sub("semidirect 8 2 3");
    case 9: return sub("quaternion 16");
    case 10: return sub("product cyclic 4 elementary 2 2");
    case 11: return sub("product dihedral 4 cyclic 2");
    case 12: return sub("product quaternion 8 cyclic 2");
    case 13: return build_small16_13();
    case 14: return sub("elementary 2 4");
    default:
      fail(errc::syntax_error, "small16 index must be 1..14, got " + std::to_string(i));
  }
}

inline CayleyTable parse_group(SpecParser& parser, int max_order) {
  std::string head = parser.next("a group family name");
  if (head == "cyclic") {
    int k = parser.next_int("cyclic order k");
    if (k < 1) fail(errc::invalid_order, "cyclic needs k >= 1");
    check_order(k, max_order, "cyclic " + std::to_string(k));
    return build_cyclic(k);
  }
  if (head == "elementary") {
    int p = parser.next_int("prime p");
    int k = parser.next_int("rank k");
    if (!is_prime(p)) fail(errc::invalid_order, "elementary needs prime p, got " + std::to_string(p));
    if (k < 1) fail(errc::invalid_order, "elementary needs k >= 1");
    long long n = 1;
    for (int i = 0; i < k; ++i) {
      n *= p;
      check_order(n, max_order, "elementary " + std::to_string(p) + " " + std::to_string(k));
    }
    return build_elementary(p, k, static_cast<int>(n));
  }
  if (head == "dihedral") {
    int k = parser.next_int("dihedral parameter k");
    if (k < 1) fail(errc::invalid_order, "dihedral needs k >= 1");
    check_order(2LL * k, max_order, "dihedral " + std::to_string(k));
    return build_dihedral(k);
  }
  if (head == "quaternion") {
    int n = parser.next_int("quaternion order");
    if (n < 8 || (n & (n - 1)) != 0)
      fail(errc::invalid_order, "quaternion needs a power-of-two order >= 8");
    check_order(n, max_order, "quaternion " + std::to_string(n));
    return build_quaternion(n);
  }
  if (head == "symmetric") {
    int k = parser.next_int("symmetric degree k");
    if (k < 1 || k > 5) fail(errc::invalid_order, "symmetric supports 1 <= k <= 5");
    long long n = 1;
    for (int i = 2; i <= k; ++i) n *= i;
    check_order(n, max_order, "symmetric " + std::to_string(k));
    return build_symmetric(k);
  }
  if (head == "heisenberg") {
    int p = parser.next_int("prime p");
    if (!is_prime(p)) fail(errc::invalid_order, "heisenberg needs prime p, got " + std::to_string(p));
    check_order(static_cast<long long>(p) * p * p, max_order, "heisenberg " + std::to_string(p));
    return build_heisenberg(p);
  }
  if (head == "semidirect") {
    int m = parser.next_int("modulus m");
    int k = parser.next_int("order k");
    int r = parser.next_int("twist r");
    if (m < 1 || k < 1 || r < 1) fail(errc::invalid_order, "semidirect needs m, k, r >= 1");
    check_order(static_cast<long long>(m) * k, max_order,
                "semidirect " + std::to_string(m) + " " + std::to_string(k));
    return build_semidirect(m, k, r);
  }
  if (head == "small16") {
    int i = parser.next_int("small16 index");
    check_order(16, max_order, "small16");
    return build_small16(i, max_order);
  }
  if (head == "product") {
    CayleyTable a = parse_group(parser, max_order);
    CayleyTable b = parse_group(parser, max_order);
    check_order(static_cast<long long>(a.n) * b.n, max_order, "product");
    return build_product_group(a, b);
  }
  fail(errc::unknown_spec, "unknown group family '" + head + "'");
}

inline RingTable ring_from(int n, const std::vector<std::vector<int>>& add,
                           const std::vector<std::vector<int>>& mul) {
  return validate_ring(n, add, mul);
}

inline RingTable build_zmod(int k) {
  std::vector<std::vector<int>> add(static_cast<std::size_t>(k),
                                    std::vector<int>(static_cast<std::size_t>(k)));
  std::vector<std::vector<int>> mul = add;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a * b) % k;
    }
  return ring_from(k, add, mul);
}

// GF(p^d) as polynomials over Z_p modulo a monic reduction polynomial with
// x^d = sum_i red[i] x^i; element index = sum_i coeff_i p^i
inline RingTable build_gf(int p, const std::vector<int>& red) {
  int d = static_cast<int>(red.size());
  int n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  auto digits = [&](int v) {
    std::vector<int> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      out[static_cast<std::size_t>(i)] = v % p;
      v /= p;
    }
    return out;
  };
  auto index = [&](const std::vector<int>& c) {
    int v = 0, mult = 1;
    for (int i = 0; i < d; ++i) {
      v += (c[static_cast<std::size_t>(i)] % p) * mult;
      mult *= p;
    }
    return v;
  };
  std::vector<std::vector<int>> add(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::vector<int>> mul = add;
  for (int a = 0; a < n; ++a) {
    std::vector<int> da = digits(a);
    for (int b = 0; b < n; ++b) {
      std::vector<int> db = digits(b);
      std::vector<int> sum(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        sum[static_cast<std::size_t>(i)] =
            (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
      add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = index(sum);

      std::vector<int> prod(static_cast<std::size_t>(2 * d - 1), 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] +
               da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) %
              p;
      for (int e = 2 * d - 2; e >= d; --e) {
        int top = prod[static_cast<std::size_t>(e)];
        if (top == 0) continue;
        prod[static_cast<std::size_t>(e)] = 0;
        for (int i = 0; i < d; ++i)
          prod[static_cast<std::size_t>(e - d + i)] =
              (prod[static_cast<std::size_t>(e - d + i)] + top * red[static_cast<std::size_t>(i)]) %
              p;
      }
      prod.resize(static_cast<std::size_t>(d));
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = index(prod);
    }
  }
  return ring_from(n, add, mul);
}

inline RingTable build_dual(int p) {
  int n = p * p;
  auto enc = [&](int a, int b) { return (((a % p) + p) % p) + p * (((b % p) + p) % p); };
  std::vector<std::vector<int>> add(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::vector<int>> mul = add;
  for (int a1 = 0; a1 < p; ++a1)
    for (int b1 = 0; b1 < p; ++b1)
      for (int a2 = 0; a2 < p; ++a2)
        for (int b2 = 0; b2 < p; ++b2) {
          add[static_cast<std::size_t>(enc(a1, b1))][static_cast<std::size_t>(enc(a2, b2))] =
              enc(a1 + a2, b1 + b2);
          mul[static_cast<std::size_t>(enc(a1, b1))][static_cast<std::size_t>(enc(a2, b2))] =
              enc(a1 * a2, a1 * b2 + a2 * b1);
        }
  return ring_from(n, add, mul);
}

// even residues modulo an even m: element i stands for 2i
inline RingTable build_evens(int m) {
  int n = m / 2;
  std::vector<std::vector<int>> add(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::vector<int>> mul = add;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (2 * a * b) % n;
    }
  return ring_from(n, add, mul);
}

inline RingTable build_product_ring(const RingTable& a, const RingTable& b) {
  int n = a.n * b.n;
  auto enc = [&](int x, int y) { return x * b.n + y; };
  std::vector<std::vector<int>> add(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::vector<int>> mul = add;
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2) {
          add[static_cast<std::size_t>(enc(x1, y1))][static_cast<std::size_t>(enc(x2, y2))] =
              enc(a.add.mul(x1, x2), b.add.mul(y1, y2));
          mul[static_cast<std::size_t>(enc(x1, y1))][static_cast<std::size_t>(enc(x2, y2))] =
              enc(a.mul(x1, x2), b.mul(y1, y2));
        }
  return ring_from(n, add, mul);
}

inline RingTable parse_ring(SpecParser& parser, int max_order) {
  std::string head = parser.next("a ring family name");
  if (head == "zmod") {
    int k = parser.next_int("modulus k");
    if (k < 1) fail(errc::invalid_order, "zmod needs k >= 1");
    check_order(k, max_order, "zmod " + std::to_string(k));
    return build_zmod(k);
  }
  if (head == "gf") {
    int q = parser.next_int("field size q");
    check_order(q, max_order, "gf " + std::to_string(q));
    if (q == 4) return build_gf(2, {1, 1});     // x^2 = x + 1
    if (q == 8) return build_gf(2, {1, 1, 0});  // x^3 = x + 1
    if (q == 9) return build_gf(3, {2, 0});     // x^2 = -1
    fail(errc::invalid_order, "gf supports q in {4, 8, 9}");
  }
  if (head == "dual") {
    int p = parser.next_int("prime p");
    if (!is_prime(p)) fail(errc::invalid_order, "dual needs prime p, got " + std::to_string(p));
    check_order(static_cast<long long>(p) * p, max_order, "dual " + std::to_string(p));
    return build_dual(p);
  }
  if (head == "evens") {
    int m = parser.next_int("even modulus m");
    if (m < 2 || m % 2 != 0) fail(errc::invalid_order, "evens needs an even m >= 2");
    check_order(m / 2, max_order, "evens " + std::to_string(m));
    return build_evens(m);
  }
  if (head == "product") {
    RingTable a = parse_ring(parser, max_order);
    RingTable b = parse_ring(parser, max_order);
    check_order(static_cast<long long>(a.n) * b.n, max_order, "product");
    return build_product_ring(a, b);
  }
  fail(errc::unknown_spec, "unknown ring family '" + head + "'");
}

}  // namespace detail

inline CayleyTable make_group(const std::string& spec, int max_order = kDefaultMaxOrder) {
  detail::SpecParser parser(spec);
  CayleyTable g = detail::parse_group(parser, max_order);
  if (!parser.done())
    fail(errc::syntax_error, "trailing tokens after group spec, starting at '" +
                                 parser.tokens[parser.pos] + "'");
  return g;
}

inline RingTable make_ring(const std::string& spec, int max_order = kDefaultMaxOrder) {
  detail::SpecParser parser(spec);
  RingTable r = detail::parse_ring(parser, max_order);
  if (!parser.done())
    fail(errc::syntax_error, "trailing tokens after ring spec, starting at '" +
                                 parser.tokens[parser.pos] + "'");
  return r;
}

// Copy of g under a pseudorandom relabeling drawn deterministically from the
// seed. Isomorphic to g by construction.
inline CayleyTable relabeled_copy(const CayleyTable& g, std::uint64_t seed) {
  std::vector<int> perm(static_cast<std::size_t>(g.n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(g.n),
                                    std::vector<int>(static_cast<std::size_t>(g.n)));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      raw[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]
         [static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])] =
             perm[static_cast<std::size_t>(g.mul(a, b))];
  return validate_cayley_table(g.n, raw);
}

inline RingTable relabeled_ring_copy(const RingTable& r, std::uint64_t seed) {
  std::vector<int> perm(static_cast<std::size_t>(r.n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> add(static_cast<std::size_t>(r.n),
                                    std::vector<int>(static_cast<std::size_t>(r.n)));
  std::vector<std::vector<int>> mul = add;
  for (int a = 0; a < r.n; ++a)
    for (int b = 0; b < r.n; ++b) {
      add[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]
         [static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])] =
             perm[static_cast<std::size_t>(r.add.mul(a, b))];
      mul[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]
         [static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])] =
             perm[static_cast<std::size_t>(r.mul(a, b))];
    }
  return validate_ring(r.n, add, mul);
}

// whether a spec names a ring family (product resolves by its first operand)
inline bool is_ring_spec(const std::string& spec) {
  detail::SpecParser parser(spec);
  while (!parser.done()) {
    std::string head = parser.next("a family name");
    if (head == "product") continue;
    return head == "zmod" || head == "gf" || head == "dual" || head == "evens";
  }
  return false;
}

}  // namespace tableiso
