#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "verkle/field.hpp"

namespace verkle::bn254 {

using ff::Fp;
using ff::Fr;
using ff::U256;

/// Fp[u]/(u^2 + 1)
struct Fp2 {
    Fp c0;
    Fp c1;

    static Fp2 zero() { return {}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }

    bool isZero() const { return c0.isZero() && c1.isZero(); }
    friend bool operator==(const Fp2&, const Fp2&) = default;

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 operator-() const { return {-c0, -c1}; }
    Fp2 operator*(const Fp2& o) const
    {
        Fp a = c0 * o.c0;
        Fp b = c1 * o.c1;
        return {a - b, (c0 + c1) * (o.c0 + o.c1) - a - b};
    }
    Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

    Fp2 square() const
    {
        Fp a = c0 * c1;
        return {(c0 + c1) * (c0 - c1), a + a};
    }
    Fp2 doubled() const { return *this + *this; }
    Fp2 conjugate() const { return {c0, -c1}; }
    Fp2 inverse() const
    {
        Fp norm = (c0.square() + c1.square()).inverse();
        return {c0 * norm, -(c1 * norm)};
    }
    // multiply by xi = 9 + u, the non-residue defining the sextic twist
    Fp2 mulByXi() const
    {
        Fp nine = Fp::fromU64(9);
        return {c0 * nine - c1, c0 + c1 * nine};
    }
    Fp2 pow(const U256& e) const;
};

/// Fp2[v]/(v^3 - xi)
struct Fp6 {
    Fp2 c0;
    Fp2 c1;
    Fp2 c2;

    static Fp6 zero() { return {}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool isZero() const { return c0.isZero() && c1.isZero() && c2.isZero(); }
    friend bool operator==(const Fp6&, const Fp6&) = default;

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }
    Fp6 operator*(const Fp6& o) const;
    Fp6 mulByV() const { return {c2.mulByXi(), c0, c1}; }
    Fp6 square() const { return *this * *this; }
    Fp6 inverse() const;
};

/// Fp6[w]/(w^2 - v). Degree-12 extension hosting the pairing target group.
struct Fp12 {
    Fp6 c0;
    Fp6 c1;

    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool isOne() const { return *this == one(); }
    friend bool operator==(const Fp12&, const Fp12&) = default;

    Fp12 operator*(const Fp12& o) const;
    Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
    Fp12 square() const;
    Fp12 inverse() const;
    // x^(p^6)
    Fp12 conjugate() const { return {c0, -c1}; }
    // x^p
    Fp12 frobenius() const;
    Fp12 pow(std::span<const uint64_t> exponentLimbs) const;
};

/// Short Weierstrass y^2 = x^3 + b in Jacobian coordinates; z == 0 marks the identity.
template <typename F>
struct JacobianPoint {
    F x{};
    F y{};
    F z{};

    static JacobianPoint identity() { return {F::one(), F::one(), F::zero()}; }
    bool isIdentity() const { return z.isZero(); }

    JacobianPoint doubled() const
    {
        if (isIdentity()) {
            return *this;
        }
        F a = x.square();
        F b = y.square();
        F c = b.square();
        F d = ((x + b).square() - a - c).doubled();
        F e = a.doubled() + a;
        F f = e.square();
        JacobianPoint r;
        r.x = f - d.doubled();
        F c8 = c.doubled().doubled().doubled();
        r.y = e * (d - r.x) - c8;
        r.z = (y * z).doubled();
        return r;
    }

    JacobianPoint operator+(const JacobianPoint& o) const
    {
        if (isIdentity()) {
            return o;
        }
        if (o.isIdentity()) {
            return *this;
        }
        F z1z1 = z.square();
        F z2z2 = o.z.square();
        F u1 = x * z2z2;
        F u2 = o.x * z1z1;
        F s1 = y * o.z * z2z2;
        F s2 = o.y * z * z1z1;
        if (u1 == u2) {
            return s1 == s2 ? doubled() : identity();
        }
        F h = u2 - u1;
        F i = h.doubled().square();
        F j = h * i;
        F rr = (s2 - s1).doubled();
        F v = u1 * i;
        JacobianPoint r;
        r.x = rr.square() - j - v.doubled();
        r.y = rr * (v - r.x) - (s1 * j).doubled();
        r.z = ((z + o.z).square() - z1z1 - z2z2) * h;
        return r;
    }

    // mixed addition with an affine point (ox, oy)
    JacobianPoint addAffine(const F& ox, const F& oy) const
    {
        if (isIdentity()) {
            return {ox, oy, F::one()};
        }
        F z1z1 = z.square();
        F u2 = ox * z1z1;
        F s2 = oy * z * z1z1;
        if (u2 == x) {
            return s2 == y ? doubled() : identity();
        }
        F h = u2 - x;
        F hh = h.square();
        F i = hh.doubled().doubled();
        F j = h * i;
        F rr = (s2 - y).doubled();
        F v = x * i;
        JacobianPoint r;
        r.x = rr.square() - j - v.doubled();
        r.y = rr * (v - r.x) - (y * j).doubled();
        r.z = (z + h).square() - z1z1 - hh;
        return r;
    }

    JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }
    JacobianPoint operator-() const { return {x, -y, z}; }
    JacobianPoint operator-(const JacobianPoint& o) const { return *this + (-o); }

    JacobianPoint mul(const U256& k) const
    {
        JacobianPoint acc = identity();
        for (std::size_t i = k.bitLength(); i-- > 0;) {
            acc = acc.doubled();
            if (k.bit(i)) {
                acc += *this;
            }
        }
        return acc;
    }

    friend bool operator==(const JacobianPoint& a, const JacobianPoint& b)
    {
        if (a.isIdentity() || b.isIdentity()) {
            return a.isIdentity() && b.isIdentity();
        }
        F az2 = a.z.square();
        F bz2 = b.z.square();
        return a.x * bz2 == b.x * az2 && a.y * bz2 * b.z == b.y * az2 * a.z;
    }
};

/// Affine point with explicit identity flag.
template <typename F>
struct AffinePoint {
    F x{};
    F y{};
    bool infinity = true;

    static AffinePoint identity() { return {}; }
    bool isIdentity() const { return infinity; }

    JacobianPoint<F> toJacobian() const
    {
        if (infinity) {
            return JacobianPoint<F>::identity();
        }
        return {x, y, F::one()};
    }

    static AffinePoint fromJacobian(const JacobianPoint<F>& p)
    {
        if (p.isIdentity()) {
            return identity();
        }
        F zi = p.z.inverse();
        F zi2 = zi.square();
        return {p.x * zi2, p.y * zi2 * zi, false};
    }

    AffinePoint operator-() const { return infinity ? *this : AffinePoint{x, -y, false}; }

    friend bool operator==(const AffinePoint& a, const AffinePoint& b)
    {
        if (a.infinity || b.infinity) {
            return a.infinity == b.infinity;
        }
        return a.x == b.x && a.y == b.y;
    }
};

using G1 = JacobianPoint<Fp>;
using G1Affine = AffinePoint<Fp>;
using G2 = JacobianPoint<Fp2>;
using G2Affine = AffinePoint<Fp2>;

/// Curve coefficient of E: y^2 = x^3 + 3.
Fp g1B();
/// Curve coefficient of the twist E': y^2 = x^3 + 3/xi.
Fp2 g2B();

G1Affine g1Generator();
G2Affine g2Generator();

bool isOnCurve(const G1Affine& p);
bool isOnCurve(const G2Affine& p);
/// Order-r subgroup membership (G1 has cofactor one, so on-curve suffices there).
bool isInSubgroup(const G2Affine& p);

inline G1 mulScalar(const G1& p, const Fr& k) { return p.mul(k.toCanonical()); }
inline G2 mulScalar(const G2& p, const Fr& k) { return p.mul(k.toCanonical()); }

/// Batch affine normalisation with a single field inversion.
std::vector<G1Affine> batchToAffine(std::span<const G1> points);

inline constexpr std::size_t kG1Bytes = 64;
inline constexpr std::size_t kG2Bytes = 128;

/// x || y, 32 bytes each big-endian; identity is 64 zero bytes.
std::array<uint8_t, kG1Bytes> encodeG1(const G1Affine& p);
/// nullopt for non-canonical coordinates or points off the curve.
std::optional<G1Affine> decodeG1(std::span<const uint8_t, kG1Bytes> in);

/// EVM precompile order: x.c1 || x.c0 || y.c1 || y.c0; identity is 128 zero bytes.
std::array<uint8_t, kG2Bytes> encodeG2(const G2Affine& p);
/// nullopt for non-canonical coordinates, points off the twist, or points outside the order-r subgroup.
std::optional<G2Affine> decodeG2(std::span<const uint8_t, kG2Bytes> in);

/// Optimal ate Miller loop, without final exponentiation.
Fp12 millerLoop(const G1Affine& p, const G2Affine& q);
/// Raises to (p^12 - 1)/r.
Fp12 finalExponentiation(const Fp12& f);
/// Reduced pairing e(p, q).
Fp12 pairing(const G1Affine& p, const G2Affine& q);
/// True iff prod_i e(p_i, q_i) == 1, sharing one final exponentiation.
bool pairingProductIsOne(std::span<const G1Affine> ps, std::span<const G2Affine> qs);

} // namespace verkle::bn254
