// endomon - exact endomorphism monoids of small p-groups
//
// Arithmetic in the Jonah-Konvisser groups G_lambda^(p) of order p^8.
//
// Every element has a unique normal form
//
//   a1^k1 a2^k2 b1^l1 b2^l2 [a1,b1]^r1 [a1,b2]^r2 [a2,b1]^r3 [a2,b2]^r4
//
// with all exponents in [0, p). The four commutators span the center,
// which equals the derived subgroup and is elementary abelian. The
// generator relations are
//
//   a1^p = [a1,b1],  a2^p = [a1, b1^l1 b2^l2],  b1^p = [a2, b1 b2],
//   b2^p = [a2,b2],  [a1,a2] = [b1,b2] = 1,
//
// where (l1, l2) is the parameter pair lambda. Commutators follow the
// convention [x,y] = x^-1 y^-1 x y.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fp.hpp"

namespace endomon {

  ////////////////////////////////////////////////////////////////////////
  // GroupParams
  ////////////////////////////////////////////////////////////////////////

  struct GroupParams {
    int p       = 2;
    int lambda1 = 0;
    int lambda2 = 1;

    GroupParams() = default;
    GroupParams(int p_, int l1, int l2) : p(p_), lambda1(l1), lambda2(l2) {
      require_supported_prime(p);
      if (!is_admissible(p, l1, l2)) {
        throw std::invalid_argument("inadmissible lambda (" + std::to_string(l1) + ","
                                    + std::to_string(l2) + ") for p = " + std::to_string(p));
      }
    }

    // lambda in {(1,0)} u {(x,1) : 0 <= x < p}
    static bool is_admissible(int p, int l1, int l2) noexcept {
      if (l1 == 1 && l2 == 0) {
        return true;
      }
      return l2 == 1 && l1 >= 0 && l1 < p;
    }

    // All p + 1 admissible parameter sets for the prime p.
    static std::vector<GroupParams> all_for(int p) {
      std::vector<GroupParams> out;
      out.emplace_back(p, 1, 0);
      for (int x = 0; x < p; ++x) {
        out.emplace_back(p, x, 1);
      }
      return out;
    }

    // G_(1,0)^(p) for every p and G_(1,1)^(2).
    bool is_exceptional() const noexcept {
      return (lambda1 == 1 && lambda2 == 0) || (p == 2 && lambda1 == 1 && lambda2 == 1);
    }

    std::string to_string() const {
      return "p=" + std::to_string(p) + ", lambda=(" + std::to_string(lambda1) + ","
             + std::to_string(lambda2) + ")";
    }

    bool operator==(GroupParams const&) const = default;
  };

  ////////////////////////////////////////////////////////////////////////
  // Element
  ////////////////////////////////////////////////////////////////////////

  // Exponents (k1, k2, l1, l2 | r1, r2, r3, r4) of the normal form. An
  // Element does not know its group; the JkGroup that produced it is the
  // only thing allowed to combine it with others.
  struct Element {
    std::array<std::uint8_t, 8> exps{};

    Element() = default;
    explicit Element(std::array<int, 8> const& e) {
      for (std::size_t i = 0; i < 8; ++i) {
        exps[i] = static_cast<std::uint8_t>(e[i]);
      }
    }

    int k1() const noexcept { return exps[0]; }
    int k2() const noexcept { return exps[1]; }
    int l1() const noexcept { return exps[2]; }
    int l2() const noexcept { return exps[3]; }
    int r(std::size_t i) const noexcept { return exps[4 + i]; }

    bool is_central() const noexcept {
      return exps[0] == 0 && exps[1] == 0 && exps[2] == 0 && exps[3] == 0;
    }
    bool has_zero_central_part() const noexcept {
      return exps[4] == 0 && exps[5] == 0 && exps[6] == 0 && exps[7] == 0;
    }

    bool operator==(Element const&) const = default;
    auto operator<=>(Element const&) const = default;
  };

  // Canonical text form "k1,k2,l1,l2|r1,r2,r3,r4".
  inline std::string to_string(Element const& e) {
    std::string s;
    for (std::size_t i = 0; i < 8; ++i) {
      if (i == 4) {
        s.push_back('|');
      } else if (i > 0) {
        s.push_back(',');
      }
      s += std::to_string(e.exps[i]);
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup
  ////////////////////////////////////////////////////////////////////////

  struct Subgroup {
    std::vector<Element> members;     // sorted
    std::vector<Element> generators;

    std::size_t size() const noexcept { return members.size(); }
    bool contains(Element const& e) const {
      return std::binary_search(members.begin(), members.end(), e);
    }
    bool operator==(Subgroup const& o) const { return members == o.members; }
  };

  ////////////////////////////////////////////////////////////////////////
  // JkGroup
  ////////////////////////////////////////////////////////////////////////

  class JkGroup {
   public:
    explicit JkGroup(GroupParams params) : _params(params), _p(params.p) {
      require_supported_prime(_p);
      if (!GroupParams::is_admissible(_p, params.lambda1, params.lambda2)) {
        throw std::invalid_argument("inadmissible group parameters " + params.to_string());
      }
      // p-th powers of a1, a2, b1, b2 in the commutator basis.
      _pth[0] = {1, 0, 0, 0};
      _pth[1] = {params.lambda1, params.lambda2, 0, 0};
      _pth[2] = {0, 0, 1, 1};
      _pth[3] = {0, 0, 0, 1};
    }

    GroupParams const& params() const noexcept { return _params; }
    int                p() const noexcept { return _p; }
    std::uint32_t order() const noexcept {
      std::uint32_t n = 1;
      for (int i = 0; i < 8; ++i) {
        n *= static_cast<std::uint32_t>(_p);
      }
      return n;
    }

    ////////////////////////////////////////////////////////////////////
    // Construction and indexing
    ////////////////////////////////////////////////////////////////////

    Element make(std::array<int, 8> const& e) const {
      Element out;
      for (std::size_t i = 0; i < 8; ++i) {
        out.exps[i] = static_cast<std::uint8_t>(mod_p(e[i], _p));
      }
      return out;
    }

    // (k1,k2,l1,l2 | 0,0,0,0)
    Element from_vector(FpVec4 const& v) const {
      return make({v[0], v[1], v[2], v[3], 0, 0, 0, 0});
    }
    // (0,0,0,0 | z1..z4)
    Element central(FpVec4 const& z) const {
      return make({0, 0, 0, 0, z[0], z[1], z[2], z[3]});
    }

    Element identity() const noexcept { return Element{}; }

    // Generators a1, a2, b1, b2 for i = 0..3.
    Element generator(std::size_t i) const {
      Element e;
      e.exps.at(i) = 1;
      return e;
    }
    // Commutators [a1,b1], [a1,b2], [a2,b1], [a2,b2] for i = 0..3.
    Element basis_commutator(std::size_t i) const {
      Element e;
      e.exps.at(4 + i) = 1;
      return e;
    }

    FpVec4 generator_part(Element const& e) const {
      return FpVec4({e.exps[0], e.exps[1], e.exps[2], e.exps[3]}, _p);
    }
    FpVec4 central_part(Element const& e) const {
      return FpVec4({e.exps[4], e.exps[5], e.exps[6], e.exps[7]}, _p);
    }

    bool is_valid(Element const& e) const noexcept {
      for (auto x : e.exps) {
        if (x >= _p) {
          return false;
        }
      }
      return true;
    }

    std::uint32_t index(Element const& e) const noexcept {
      std::uint32_t x = 0;
      for (auto d : e.exps) {
        x = x * static_cast<std::uint32_t>(_p) + d;
      }
      return x;
    }

    Element element_at(std::uint32_t x) const noexcept {
      Element e;
      for (std::size_t i = 8; i-- > 0;) {
        e.exps[i] = static_cast<std::uint8_t>(x % static_cast<std::uint32_t>(_p));
        x /= static_cast<std::uint32_t>(_p);
      }
      return e;
    }

    std::vector<Element> elements() const {
      std::vector<Element> out;
      out.reserve(order());
      for (std::uint32_t x = 0; x < order(); ++x) {
        out.push_back(element_at(x));
      }
      return out;
    }

    Element parse(std::string_view text) const {
      std::array<int, 8> e{};
      std::size_t        n = 0;
      std::string        cur;
      auto               flush = [&](char sep) {
        if (cur.empty() || n >= 8) {
          throw std::invalid_argument("malformed element \"" + std::string(text) + "\"");
        }
        if ((sep == '|') != (n == 3)) {
          throw std::invalid_argument("malformed element \"" + std::string(text)
                                      + "\": expected k1,k2,l1,l2|r1,r2,r3,r4");
        }
        e[n++] = std::stoi(cur);
        cur.clear();
      };
      for (char c : text) {
        if (c == ',' || c == '|') {
          flush(c);
        } else if (c >= '0' && c <= '9') {
          cur.push_back(c);
        } else if (c != ' ') {
          throw std::invalid_argument("malformed element \"" + std::string(text) + "\"");
        }
      }
      flush('\0');
      if (n != 8) {
        throw std::invalid_argument("malformed element \"" + std::string(text) + "\"");
      }
      for (int x : e) {
        if (x < 0 || x >= _p) {
          throw std::invalid_argument("exponent out of range in \"" + std::string(text) + "\"");
        }
      }
      return make(e);
    }

    ////////////////////////////////////////////////////////////////////
    // Group operations
    ////////////////////////////////////////////////////////////////////

    // Collection: move y's a-part left past x's b-part, using
    // b_j a_i = a_i b_j [a_i,b_j]^-1, then add exponents, folding carries
    // through the p-th power relations.
    Element multiply(Element const& x, Element const& y) const noexcept {
      int r[4] = {x.exps[4] + y.exps[4] - x.exps[2] * y.exps[0],
                  x.exps[5] + y.exps[5] - x.exps[3] * y.exps[0],
                  x.exps[6] + y.exps[6] - x.exps[2] * y.exps[1],
                  x.exps[7] + y.exps[7] - x.exps[3] * y.exps[1]};
      Element out;
      for (std::size_t i = 0; i < 4; ++i) {
        int s = x.exps[i] + y.exps[i];
        if (s >= _p) {
          s -= _p;
          for (std::size_t c = 0; c < 4; ++c) {
            r[c] += _pth[i][c];
          }
        }
        out.exps[i] = static_cast<std::uint8_t>(s);
      }
      for (std::size_t c = 0; c < 4; ++c) {
        out.exps[4 + c] = static_cast<std::uint8_t>(mod_p(r[c], _p));
      }
      return out;
    }

    Element inverse(Element const& x) const noexcept {
      // y0 = a^-k b^-l has the right generator part; fix the center after.
      Element y0;
      for (std::size_t i = 0; i < 4; ++i) {
        y0.exps[i] = static_cast<std::uint8_t>(mod_p(-x.exps[i], _p));
      }
      Element prod = multiply(x, y0);
      Element out  = y0;
      for (std::size_t c = 0; c < 4; ++c) {
        out.exps[4 + c] = static_cast<std::uint8_t>(mod_p(-prod.exps[4 + c], _p));
      }
      return out;
    }

    // Square-and-multiply.
    Element power(Element const& x, std::uint64_t n) const noexcept {
      Element result = identity();
      Element base   = x;
      while (n > 0) {
        if (n & 1) {
          result = multiply(result, base);
        }
        n >>= 1;
        if (n > 0) {
          base = multiply(base, base);
        }
      }
      return result;
    }

    // Closed form: (a^k b^l)^n = a^(nk) b^(nl) prod [a_i,b_j]^(-T(n-1) k_i l_j)
    // with T the triangle numbers; the central part of x contributes z^n.
    Element power_formula(Element const& x, std::uint64_t n) const noexcept {
      auto const    p   = static_cast<std::uint64_t>(_p);
      std::uint64_t tri = n == 0 ? 0 : ((n - 1) * n / 2) % p;
      int           r[4];
      int const     k[2] = {x.exps[0], x.exps[1]};
      int const     l[2] = {x.exps[2], x.exps[3]};
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          r[2 * i + j] = static_cast<int>((n % p) * x.exps[4 + 2 * i + j] % p)
                         - static_cast<int>(tri) * k[i] * l[j];
        }
      }
      Element out;
      for (std::size_t g = 0; g < 4; ++g) {
        std::uint64_t total   = n * x.exps[g];
        auto          carries = static_cast<int>((total / p) % p);
        out.exps[g]           = static_cast<std::uint8_t>(total % p);
        for (std::size_t c = 0; c < 4; ++c) {
          r[c] += carries * _pth[g][c];
        }
      }
      for (std::size_t c = 0; c < 4; ++c) {
        out.exps[4 + c] = static_cast<std::uint8_t>(mod_p(r[c], _p));
      }
      return out;
    }

    // [x,y] = x^-1 y^-1 x y
    Element commutator(Element const& x, Element const& y) const noexcept {
      return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
    }

    bool is_central(Element const& e) const noexcept { return e.is_central(); }

    // Every element has order dividing p^2.
    std::uint32_t element_order(Element const& e) const noexcept {
      if (e == identity()) {
        return 1;
      }
      if (power(e, static_cast<std::uint64_t>(_p)) == identity()) {
        return static_cast<std::uint32_t>(_p);
      }
      return static_cast<std::uint32_t>(_p * _p);
    }

    ////////////////////////////////////////////////////////////////////
    // Linear shadows of the group law
    ////////////////////////////////////////////////////////////////////

    // p-th power of a1^k1 a2^k2 b1^l1 b2^l2 when p is odd:
    // (k1 + l1*k2, l2*k2, l1, l1 + l2) in the commutator basis.
    FpVec4 pth_power_image(FpVec4 const& v) const {
      detail::check_same_modulus(_p, v.modulus());
      FpVec4 out(_p);
      for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t c = 0; c < 4; ++c) {
          out.set(c, out[c] + v[g] * _pth[g][c]);
        }
      }
      return out;
    }

    // The exact p-th power of any element with generator part v, for any p.
    FpVec4 pth_power(FpVec4 const& v) const {
      FpVec4 out = pth_power_image(v);
      if (_p == 2) {
        // T(p-1) = 1 when p = 2 and vanishes mod p otherwise.
        out = out - cross_term(v);
      }
      return out;
    }

    // Coordinates of [x, y] for x, y with generator parts v, w:
    // entry (i,j) is k_i(v) l_j(w) - l_j(v) k_i(w).
    FpVec4 commutator_vector(FpVec4 const& v, FpVec4 const& w) const {
      detail::check_same_modulus(v.modulus(), w.modulus());
      FpVec4 out(_p);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          out.set(2 * i + j, v[i] * w[2 + j] - v[2 + j] * w[i]);
        }
      }
      return out;
    }

    // Four bilinear relations k1L1 = l1K1, k1L2 = l2K1, k2L1 = l1K2,
    // k2L2 = l2K2 for a1^k1 a2^k2 b1^l1 b2^l2 and a1^K1 a2^K2 b1^L1 b2^L2.
    bool commute_criterion(FpVec4 const& v, FpVec4 const& w) const {
      return commutator_vector(v, w).is_zero();
    }

    ////////////////////////////////////////////////////////////////////
    // Subgroups
    ////////////////////////////////////////////////////////////////////

    Subgroup subgroup_from_members(std::vector<Element> members,
                                   std::vector<Element> generators = {}) const {
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      return Subgroup{std::move(members), std::move(generators)};
    }

    // Closure of the generators under multiplication (finite group, so
    // this already contains inverses and the identity).
    Subgroup generate(std::vector<Element> const& gens) const {
      std::vector<char>    seen(order(), 0);
      std::vector<Element> members{identity()};
      seen[index(identity())] = 1;
      for (std::size_t head = 0; head < members.size(); ++head) {
        Element const cur = members[head];
        for (auto const& g : gens) {
          Element next = multiply(cur, g);
          auto    ix   = index(next);
          if (!seen[ix]) {
            seen[ix] = 1;
            members.push_back(next);
          }
        }
      }
      return subgroup_from_members(std::move(members), gens);
    }

    Subgroup center() const {
      return generate({basis_commutator(0), basis_commutator(1), basis_commutator(2),
                       basis_commutator(3)});
    }

    Subgroup cyclic(Element const& e) const { return generate({e}); }

    // {e : e^p = 1}
    Subgroup omega1() const {
      std::vector<Element> members;
      for (std::uint32_t x = 0; x < order(); ++x) {
        Element e = element_at(x);
        if (power(e, static_cast<std::uint64_t>(_p)) == identity()) {
          members.push_back(e);
        }
      }
      return subgroup_from_members(std::move(members));
    }

    bool is_subgroup(Subgroup const& h) const {
      if (!h.contains(identity())) {
        return false;
      }
      for (auto const& x : h.members) {
        if (!h.contains(inverse(x))) {
          return false;
        }
        for (auto const& y : h.members) {
          if (!h.contains(multiply(x, y))) {
            return false;
          }
        }
      }
      return true;
    }

   private:
    // Entry (i,j) is k_i l_j.
    FpVec4 cross_term(FpVec4 const& v) const {
      FpVec4 out(_p);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          out.set(2 * i + j, v[i] * v[2 + j]);
        }
      }
      return out;
    }

    GroupParams                       _params;
    int                               _p;
    std::array<std::array<int, 4>, 4> _pth{};
  };

}  // namespace endomon
