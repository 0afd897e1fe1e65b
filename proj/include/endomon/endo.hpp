// endomon - exact endomorphism monoids of small p-groups
//
// Endomorphisms of G_lambda^(p), stored as the images of a1, a2, b1, b2.

#pragma once

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fp.hpp"
#include "jk_group.hpp"

namespace endomon {

  // Prospective images of a1, a2, b1, b2.
  using GenImages = std::array<Element, 4>;

  // A generator map known to extend to an endomorphism. Equality is
  // equality of generator images.
  class Endo {
   public:
    Endo() = default;

    GenImages const& images() const noexcept { return _images; }
    Element const&   image(std::size_t i) const { return _images.at(i); }

    bool operator==(Endo const&) const = default;
    auto operator<=>(Endo const&) const = default;

   private:
    friend Endo make_endo_unchecked(GenImages const&);
    explicit Endo(GenImages const& im) : _images(im) {}
    GenImages _images{};
  };

  // Callers must have established that the images satisfy the relations.
  inline Endo make_endo_unchecked(GenImages const& images) {
    return Endo(images);
  }

  // A homomorphism G -> center, as the matrix whose column j holds the
  // coordinates of the image of generator j in the basis
  // [a1,b1], [a1,b2], [a2,b1], [a2,b2]. Every matrix is one.
  struct CentralHom {
    FpMat4 mat;

    explicit CentralHom(FpMat4 m) : mat(std::move(m)) {}
    static CentralHom zero(int p) { return CentralHom(FpMat4(p)); }

    CentralHom operator+(CentralHom const& o) const { return CentralHom(mat + o.mat); }
    CentralHom operator-() const { return CentralHom(FpMat4(mat.modulus()) - mat); }
    bool       operator==(CentralHom const&) const = default;
  };

  template <typename Rng>
  CentralHom random_central_hom(int p, Rng& rng) {
    std::uniform_int_distribution<int> digit(0, p - 1);
    FpMat4                             m(p);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        m.set(i, j, digit(rng));
      }
    }
    return CentralHom(m);
  }

  // The 16 matrices with a single entry 1; they generate all central homs.
  inline std::vector<CentralHom> elementary_central_homs(int p) {
    std::vector<CentralHom> out;
    out.reserve(16);
    for (std::size_t k = 0; k < 16; ++k) {
      out.emplace_back(FpMat4::elementary(k / 4, k % 4, p));
    }
    return out;
  }

  inline std::string to_string(CentralHom const& f) {
    return f.mat.to_string();
  }

  inline std::string to_string(Endo const& e) {
    std::string s;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i > 0) {
        s.push_back(';');
      }
      s += to_string(e.image(i));
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  // The defining relations evaluated on the images, computed in the group:
  //   [g1,g2] = 1, [g3,g4] = 1, g1^p = [g1,g3], g2^p = [g1, g3^l1 g4^l2],
  //   g3^p = [g2, g3 g4], g4^p = [g2, g4].
  inline bool validate(JkGroup const& g, GenImages const& im) {
    for (auto const& x : im) {
      if (!g.is_valid(x)) {
        return false;
      }
    }
    auto const p   = static_cast<std::uint64_t>(g.p());
    auto const one = g.identity();
    auto const l1  = static_cast<std::uint64_t>(g.params().lambda1);
    auto const l2  = static_cast<std::uint64_t>(g.params().lambda2);
    return g.commutator(im[0], im[1]) == one && g.commutator(im[2], im[3]) == one
           && g.power(im[0], p) == g.commutator(im[0], im[2])
           && g.power(im[1], p)
                  == g.commutator(im[0], g.multiply(g.power(im[2], l1), g.power(im[3], l2)))
           && g.power(im[2], p) == g.commutator(im[1], g.multiply(im[2], im[3]))
           && g.power(im[3], p) == g.commutator(im[1], im[3]);
  }

  // The same six relations through their linear shadow: p-th powers and
  // commutators only see the generator parts of the images, so validity
  // is a property of four vectors in F_p^4.
  inline bool validate_vectors(JkGroup const& g, std::array<FpVec4, 4> const& v) {
    auto const l1 = g.params().lambda1;
    auto const l2 = g.params().lambda2;
    return g.commute_criterion(v[0], v[1]) && g.commute_criterion(v[2], v[3])
           && g.pth_power(v[0]) == g.commutator_vector(v[0], v[2])
           && g.pth_power(v[1]) == g.commutator_vector(v[0], v[2].scaled(l1) + v[3].scaled(l2))
           && g.pth_power(v[2]) == g.commutator_vector(v[1], v[2] + v[3])
           && g.pth_power(v[3]) == g.commutator_vector(v[1], v[3]);
  }

  inline std::optional<Endo> try_make_endo(JkGroup const& g, GenImages const& im) {
    if (!validate(g, im)) {
      return std::nullopt;
    }
    return make_endo_unchecked(im);
  }

  inline Endo make_endo(JkGroup const& g, GenImages const& im) {
    auto e = try_make_endo(g, im);
    if (!e) {
      throw std::invalid_argument("generator images do not satisfy the defining relations");
    }
    return *e;
  }

  inline Endo identity_endo(JkGroup const& g) {
    return make_endo_unchecked({g.generator(0), g.generator(1), g.generator(2), g.generator(3)});
  }

  inline Endo zero_endo(JkGroup const&) {
    return make_endo_unchecked(GenImages{});
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  // phi(x) = g1^k1 g2^k2 g3^l1 g4^l2 [g1,g3]^r1 [g1,g4]^r2 [g2,g3]^r3 [g2,g4]^r4
  class Evaluator {
   public:
    Evaluator(JkGroup const& g, Endo const& e) : _g(&g), _im(e.images()) {
      _comm[0] = g.commutator(_im[0], _im[2]);
      _comm[1] = g.commutator(_im[0], _im[3]);
      _comm[2] = g.commutator(_im[1], _im[2]);
      _comm[3] = g.commutator(_im[1], _im[3]);
    }

    Element operator()(Element const& x) const {
      Element out = _g->identity();
      for (std::size_t i = 0; i < 4; ++i) {
        if (x.exps[i] != 0) {
          out = _g->multiply(out, _g->power(_im[i], x.exps[i]));
        }
      }
      for (std::size_t c = 0; c < 4; ++c) {
        if (x.exps[4 + c] != 0) {
          out = _g->multiply(out, _g->power(_comm[c], x.exps[4 + c]));
        }
      }
      return out;
    }

   private:
    JkGroup const*         _g;
    GenImages              _im;
    std::array<Element, 4> _comm;
  };

  inline Element apply(JkGroup const& g, Endo const& e, Element const& x) {
    return Evaluator(g, e)(x);
  }

  // (e1 o e2)(x) = e1(e2(x))
  inline Endo compose(JkGroup const& g, Endo const& e1, Endo const& e2) {
    Evaluator ev(g, e1);
    GenImages im;
    for (std::size_t i = 0; i < 4; ++i) {
      im[i] = ev(e2.image(i));
    }
    return make_endo_unchecked(im);
  }

  // n-fold composite; power(e, 0) is the identity.
  inline Endo power(JkGroup const& g, Endo const& e, std::uint64_t n) {
    Endo result = identity_endo(g);
    Endo base   = e;
    while (n > 0) {
      if (n & 1) {
        result = compose(g, result, base);
      }
      n >>= 1;
      if (n > 0) {
        base = compose(g, base, base);
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Central homomorphisms, sums and the star map
  ////////////////////////////////////////////////////////////////////////

  inline Endo as_endo(JkGroup const& g, CentralHom const& f) {
    detail::check_same_modulus(g.p(), f.mat.modulus());
    GenImages im;
    for (std::size_t j = 0; j < 4; ++j) {
      im[j] = g.central(f.mat.column(j));
    }
    return make_endo_unchecked(im);
  }

  inline bool is_central_valued(Endo const& e) noexcept {
    for (auto const& x : e.images()) {
      if (!x.is_central()) {
        return false;
      }
    }
    return true;
  }

  inline CentralHom as_central_hom(JkGroup const& g, Endo const& e) {
    if (!is_central_valued(e)) {
      throw std::invalid_argument("endomorphism does not map into the center");
    }
    FpMat4 m(g.p());
    for (std::size_t j = 0; j < 4; ++j) {
      m.set_column(j, g.central_part(e.image(j)));
    }
    return CentralHom(m);
  }

  // Pointwise product g -> e(g) c(g); c must map into the center.
  inline Endo sum(JkGroup const& g, Endo const& e, Endo const& c) {
    if (!is_central_valued(c)) {
      throw std::invalid_argument("second summand must map into the center");
    }
    GenImages im;
    for (std::size_t i = 0; i < 4; ++i) {
      im[i] = g.multiply(e.image(i), c.image(i));
    }
    return make_endo_unchecked(im);
  }

  inline Endo sum(JkGroup const& g, Endo const& e, CentralHom const& c) {
    return sum(g, e, as_endo(g, c));
  }

  // f*: x -> x f(x)
  inline Endo star(JkGroup const& g, CentralHom const& f) {
    return sum(g, identity_endo(g), f);
  }

  ////////////////////////////////////////////////////////////////////////
  // Normalization
  ////////////////////////////////////////////////////////////////////////

  // Unique split e = norm + cent where norm sends every generator to an
  // element with zero commutator exponents.
  inline std::pair<Endo, CentralHom> normalize(JkGroup const& g, Endo const& e) {
    GenImages im = e.images();
    FpMat4    m(g.p());
    for (std::size_t j = 0; j < 4; ++j) {
      m.set_column(j, g.central_part(im[j]));
      for (std::size_t c = 4; c < 8; ++c) {
        im[j].exps[c] = 0;
      }
    }
    return {make_endo_unchecked(im), CentralHom(m)};
  }

  inline bool is_normalized(Endo const& e) noexcept {
    for (auto const& x : e.images()) {
      if (!x.has_zero_central_part()) {
        return false;
      }
    }
    return true;
  }

  // Matrix induced on G / center: column j is the generator part of the
  // image of generator j.
  inline FpMat4 abelianization_matrix(JkGroup const& g, Endo const& e) {
    FpMat4 m(g.p());
    for (std::size_t j = 0; j < 4; ++j) {
      m.set_column(j, g.generator_part(e.image(j)));
    }
    return m;
  }

  // The center is the Frattini subgroup here, so e is onto iff the
  // induced map on G / center is.
  inline bool is_automorphism(JkGroup const& g, Endo const& e) {
    return rank(abelianization_matrix(g, e)) == 4;
  }

  inline Endo parse_endo(JkGroup const& g, std::string_view text) {
    GenImages   im;
    std::size_t n     = 0;
    std::size_t start = 0;
    while (true) {
      auto stop = text.find(';', start);
      if (n >= 4) {
        throw std::invalid_argument("expected four ';'-separated elements");
      }
      im[n++] = g.parse(text.substr(start, stop == std::string_view::npos ? stop : stop - start));
      if (stop == std::string_view::npos) {
        break;
      }
      start = stop + 1;
    }
    if (n != 4) {
      throw std::invalid_argument("expected four ';'-separated elements");
    }
    return make_endo(g, im);
  }

  inline CentralHom parse_central_hom(int p, std::string_view text) {
    if (text.size() != 16) {
      throw std::invalid_argument("central homomorphism needs 16 row-major digits");
    }
    FpMat4 m(p);
    for (std::size_t k = 0; k < 16; ++k) {
      int d = text[k] - '0';
      if (d < 0 || d >= p) {
        throw std::invalid_argument("digit out of range in central homomorphism");
      }
      m.set(k / 4, k % 4, d);
    }
    return CentralHom(m);
  }

}  // namespace endomon
