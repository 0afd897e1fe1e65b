// endomon - exact endomorphism monoids of small p-groups
//
// Arithmetic over the prime fields F_2, F_3, F_5: scalars, 4-vectors and
// 4x4 matrices. The modulus travels with every value so a single binary
// can serve all supported primes.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace endomon {

  inline bool is_supported_prime(int p) noexcept {
    return p == 2 || p == 3 || p == 5;
  }

  inline void require_supported_prime(int p) {
    if (!is_supported_prime(p)) {
      throw std::invalid_argument("unsupported prime " + std::to_string(p)
                                  + " (expected 2, 3 or 5)");
    }
  }

  // Reduce any integer into [0, p).
  constexpr int mod_p(int x, int p) noexcept {
    int r = x % p;
    return r < 0 ? r + p : r;
  }

  namespace detail {
    inline void check_same_modulus(int p, int q) {
      if (p != q) {
        throw std::invalid_argument("modulus mismatch: " + std::to_string(p)
                                    + " vs " + std::to_string(q));
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // FpScalar
  ////////////////////////////////////////////////////////////////////////

  class FpScalar {
   public:
    FpScalar(int value, int p) : _value(0), _p(static_cast<std::uint8_t>(p)) {
      require_supported_prime(p);
      _value = static_cast<std::uint8_t>(mod_p(value, p));
    }

    int value() const noexcept { return _value; }
    int modulus() const noexcept { return _p; }

    FpScalar operator+(FpScalar const& o) const {
      detail::check_same_modulus(_p, o._p);
      return FpScalar(_value + o._value, _p);
    }
    FpScalar operator-(FpScalar const& o) const {
      detail::check_same_modulus(_p, o._p);
      return FpScalar(_value - o._value, _p);
    }
    FpScalar operator*(FpScalar const& o) const {
      detail::check_same_modulus(_p, o._p);
      return FpScalar(_value * o._value, _p);
    }
    FpScalar operator-() const { return FpScalar(-_value, _p); }

    FpScalar inverse() const {
      if (_value == 0) {
        throw std::domain_error("inversion of zero in F_" + std::to_string(_p));
      }
      // p <= 5, so a linear scan is the whole story.
      for (int c = 1; c < _p; ++c) {
        if ((c * _value) % _p == 1) {
          return FpScalar(c, _p);
        }
      }
      throw std::logic_error("no inverse found");
    }

    bool operator==(FpScalar const&) const = default;

   private:
    std::uint8_t _value;
    std::uint8_t _p;
  };

  ////////////////////////////////////////////////////////////////////////
  // FpVec4
  ////////////////////////////////////////////////////////////////////////

  class FpVec4 {
   public:
    using storage = std::array<std::uint8_t, 4>;

    explicit FpVec4(int p) : _v{}, _p(static_cast<std::uint8_t>(p)) {
      require_supported_prime(p);
    }

    FpVec4(std::array<int, 4> const& entries, int p) : FpVec4(p) {
      for (std::size_t i = 0; i < 4; ++i) {
        _v[i] = static_cast<std::uint8_t>(mod_p(entries[i], p));
      }
    }

    int modulus() const noexcept { return _p; }
    int operator[](std::size_t i) const noexcept { return _v[i]; }
    FpScalar at(std::size_t i) const { return FpScalar(_v.at(i), _p); }
    void set(std::size_t i, int x) { _v.at(i) = static_cast<std::uint8_t>(mod_p(x, _p)); }

    bool is_zero() const noexcept { return _v == storage{}; }

    FpVec4 operator+(FpVec4 const& o) const {
      detail::check_same_modulus(_p, o._p);
      FpVec4 out(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        out._v[i] = static_cast<std::uint8_t>((_v[i] + o._v[i]) % _p);
      }
      return out;
    }
    FpVec4 operator-(FpVec4 const& o) const {
      detail::check_same_modulus(_p, o._p);
      FpVec4 out(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        out._v[i] = static_cast<std::uint8_t>((_v[i] + _p - o._v[i]) % _p);
      }
      return out;
    }
    FpVec4 scaled(int c) const {
      FpVec4 out(_p);
      c = mod_p(c, _p);
      for (std::size_t i = 0; i < 4; ++i) {
        out._v[i] = static_cast<std::uint8_t>((c * _v[i]) % _p);
      }
      return out;
    }

    // Index in [0, p^4), most significant digit first.
    std::uint32_t index() const noexcept {
      std::uint32_t x = 0;
      for (auto d : _v) {
        x = x * _p + d;
      }
      return x;
    }

    static FpVec4 from_index(std::uint32_t x, int p) {
      FpVec4 out(p);
      for (std::size_t i = 4; i-- > 0;) {
        out._v[i] = static_cast<std::uint8_t>(x % p);
        x /= p;
      }
      return out;
    }

    std::array<int, 4> to_array() const {
      return {_v[0], _v[1], _v[2], _v[3]};
    }

    bool operator==(FpVec4 const&) const = default;
    auto operator<=>(FpVec4 const&) const = default;

   private:
    storage      _v;
    std::uint8_t _p;
  };

  ////////////////////////////////////////////////////////////////////////
  // FpMat4
  ////////////////////////////////////////////////////////////////////////

  // Column j holds the coordinates of the image of the j-th generator.
  class FpMat4 {
   public:
    explicit FpMat4(int p) : _a{}, _p(static_cast<std::uint8_t>(p)) {
      require_supported_prime(p);
    }

    FpMat4(std::array<std::array<int, 4>, 4> const& rows, int p) : FpMat4(p) {
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          set(i, j, rows[i][j]);
        }
      }
    }

    static FpMat4 identity(int p) {
      FpMat4 m(p);
      for (std::size_t i = 0; i < 4; ++i) {
        m.set(i, i, 1);
      }
      return m;
    }

    static FpMat4 elementary(std::size_t i, std::size_t j, int p) {
      FpMat4 m(p);
      m.set(i, j, 1);
      return m;
    }

    static FpMat4 from_columns(std::array<FpVec4, 4> const& cols) {
      int    p = cols[0].modulus();
      FpMat4 m(p);
      for (std::size_t j = 0; j < 4; ++j) {
        detail::check_same_modulus(p, cols[j].modulus());
        for (std::size_t i = 0; i < 4; ++i) {
          m.set(i, j, cols[j][i]);
        }
      }
      return m;
    }

    // Row-major index in [0, p^16).
    static FpMat4 from_index(std::uint64_t x, int p) {
      FpMat4 m(p);
      for (std::size_t k = 16; k-- > 0;) {
        m._a[k] = static_cast<std::uint8_t>(x % p);
        x /= p;
      }
      return m;
    }

    int modulus() const noexcept { return _p; }
    int operator()(std::size_t i, std::size_t j) const noexcept { return _a[4 * i + j]; }
    void set(std::size_t i, std::size_t j, int x) {
      _a.at(4 * i + j) = static_cast<std::uint8_t>(mod_p(x, _p));
    }

    FpVec4 column(std::size_t j) const {
      FpVec4 c(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        c.set(i, (*this)(i, j));
      }
      return c;
    }
    void set_column(std::size_t j, FpVec4 const& c) {
      detail::check_same_modulus(_p, c.modulus());
      for (std::size_t i = 0; i < 4; ++i) {
        set(i, j, c[i]);
      }
    }

    bool is_zero() const noexcept {
      for (auto x : _a) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    FpMat4 operator+(FpMat4 const& o) const {
      detail::check_same_modulus(_p, o._p);
      FpMat4 out(_p);
      for (std::size_t k = 0; k < 16; ++k) {
        out._a[k] = static_cast<std::uint8_t>((_a[k] + o._a[k]) % _p);
      }
      return out;
    }
    FpMat4 operator-(FpMat4 const& o) const {
      detail::check_same_modulus(_p, o._p);
      FpMat4 out(_p);
      for (std::size_t k = 0; k < 16; ++k) {
        out._a[k] = static_cast<std::uint8_t>((_a[k] + _p - o._a[k]) % _p);
      }
      return out;
    }
    FpMat4 scaled(int c) const {
      FpMat4 out(_p);
      c = mod_p(c, _p);
      for (std::size_t k = 0; k < 16; ++k) {
        out._a[k] = static_cast<std::uint8_t>((c * _a[k]) % _p);
      }
      return out;
    }
    FpMat4 operator*(FpMat4 const& o) const {
      detail::check_same_modulus(_p, o._p);
      FpMat4 out(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          int s = 0;
          for (std::size_t k = 0; k < 4; ++k) {
            s += (*this)(i, k) * o(k, j);
          }
          out._a[4 * i + j] = static_cast<std::uint8_t>(s % _p);
        }
      }
      return out;
    }
    FpVec4 operator*(FpVec4 const& v) const {
      detail::check_same_modulus(_p, v.modulus());
      FpVec4 out(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        int s = 0;
        for (std::size_t k = 0; k < 4; ++k) {
          s += (*this)(i, k) * v[k];
        }
        out.set(i, s);
      }
      return out;
    }

    FpMat4 transposed() const {
      FpMat4 out(_p);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          out.set(j, i, (*this)(i, j));
        }
      }
      return out;
    }

    std::uint64_t index() const noexcept {
      std::uint64_t x = 0;
      for (auto d : _a) {
        x = x * _p + d;
      }
      return x;
    }

    // Row-major digits, e.g. "1000010000100001" for the identity.
    std::string to_string() const {
      std::string s;
      s.reserve(16);
      for (auto d : _a) {
        s.push_back(static_cast<char>('0' + d));
      }
      return s;
    }

    bool operator==(FpMat4 const&) const = default;
    auto operator<=>(FpMat4 const&) const = default;

   private:
    std::array<std::uint8_t, 16> _a;
    std::uint8_t                 _p;
  };

  namespace detail {
    // Gaussian elimination on a copy; first nonzero entry in the column is
    // the pivot. Returns (rank, determinant).
    inline std::pair<int, int> eliminate(FpMat4 const& m) {
      int                               p = m.modulus();
      std::array<std::array<int, 4>, 4> a{};
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          a[i][j] = m(i, j);
        }
      }
      int         det  = 1;
      std::size_t rank = 0;
      for (std::size_t col = 0; col < 4 && rank < 4; ++col) {
        std::size_t pivot = rank;
        while (pivot < 4 && a[pivot][col] == 0) {
          ++pivot;
        }
        if (pivot == 4) {
          det = 0;
          continue;
        }
        if (pivot != rank) {
          std::swap(a[pivot], a[rank]);
          det = mod_p(-det, p);
        }
        det     = (det * a[rank][col]) % p;
        int inv = FpScalar(a[rank][col], p).inverse().value();
        for (std::size_t r = rank + 1; r < 4; ++r) {
          int f = (a[r][col] * inv) % p;
          if (f == 0) {
            continue;
          }
          for (std::size_t c = col; c < 4; ++c) {
            a[r][c] = mod_p(a[r][c] - f * a[rank][c], p);
          }
        }
        ++rank;
      }
      if (rank < 4) {
        det = 0;
      }
      return {static_cast<int>(rank), det};
    }
  }  // namespace detail

  inline int rank(FpMat4 const& m) {
    return detail::eliminate(m).first;
  }

  inline FpScalar det(FpMat4 const& m) {
    return FpScalar(detail::eliminate(m).second, m.modulus());
  }

  inline FpMat4 inverse(FpMat4 const& m) {
    int                               p = m.modulus();
    std::array<std::array<int, 8>, 4> a{};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        a[i][j] = m(i, j);
      }
      a[i][4 + i] = 1;
    }
    for (std::size_t col = 0; col < 4; ++col) {
      std::size_t pivot = col;
      while (pivot < 4 && a[pivot][col] == 0) {
        ++pivot;
      }
      if (pivot == 4) {
        throw std::domain_error("singular matrix has no inverse");
      }
      std::swap(a[pivot], a[col]);
      int inv = FpScalar(a[col][col], p).inverse().value();
      for (auto& x : a[col]) {
        x = (x * inv) % p;
      }
      for (std::size_t r = 0; r < 4; ++r) {
        if (r == col || a[r][col] == 0) {
          continue;
        }
        int f = a[r][col];
        for (std::size_t c = 0; c < 8; ++c) {
          a[r][c] = mod_p(a[r][c] - f * a[col][c], p);
        }
      }
    }
    FpMat4 out(p);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        out.set(i, j, a[i][4 + j]);
      }
    }
    return out;
  }

}  // namespace endomon
