#include "verkle/bn254.hpp"

#include <algorithm>

namespace verkle::bn254 {

namespace {

U256 divideBySmall(U256 v, uint64_t d)
{
    ff::u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        ff::u128 cur = (rem << 64) | v.limb[i];
        v.limb[i] = static_cast<uint64_t>(cur / d);
        rem = cur % d;
    }
    return v;
}

// 6x + 2 for the BN parameter x = 4965661367192848881
constexpr U256 kAteLoopCount{{0x9d797039be763ba8ULL, 0x1ULL, 0, 0}};

// (p^4 - p^2 + 1) / r, little-endian limbs
constexpr std::array<uint64_t, 12> kHardExponent{
    0xe81bb482ccdf42b1ULL, 0x5abf5cc4f49c36d4ULL, 0xf1154e7e1da014fdULL, 0xdcc7b44c87cdbacfULL,
    0xaaa441e3954bcf8aULL, 0x6b887d56d5095f23ULL, 0x79581e16f3fd90c6ULL, 0x3b1b1355d189227dULL,
    0x4e529a5861876f6bULL, 0x6c0eb522d5b12278ULL, 0x331ec15183177fafULL, 0x01baaa710b0759adULL};

struct FrobeniusTable {
    // gamma[j] = xi^(j (p-1) / 6)
    std::array<Fp2, 6> gamma;

    FrobeniusTable()
    {
        U256 pm1 = Fp::kModulus;
        ff::detail::subInPlace(pm1, U256{{1, 0, 0, 0}});
        Fp2 xi{Fp::fromU64(9), Fp::one()};
        Fp2 g1 = xi.pow(divideBySmall(pm1, 6));
        gamma[0] = Fp2::one();
        for (std::size_t j = 1; j < gamma.size(); ++j) {
            gamma[j] = gamma[j - 1] * g1;
        }
    }
};

const FrobeniusTable& frobeniusTable()
{
    static const FrobeniusTable table;
    return table;
}

Fp parseHex(const char* hex)
{
    U256 v;
    std::size_t len = std::char_traits<char>::length(hex);
    for (std::size_t i = 0; i < len; ++i) {
        char c = hex[len - 1 - i];
        uint64_t nibble = (c >= '0' && c <= '9') ? static_cast<uint64_t>(c - '0') : static_cast<uint64_t>(c - 'a' + 10);
        v.limb[i / 16] |= nibble << (4 * (i % 16));
    }
    return Fp::fromCanonical(v);
}

template <typename F>
bool onCurve(const AffinePoint<F>& p, const F& b)
{
    if (p.infinity) {
        return true;
    }
    return p.y.square() == p.x.square() * p.x + b;
}

// Line through the untwisted images of T (and its partner) with twisted slope `lambda`,
// evaluated at P: yP - lambda*xP*w + (lambda*xT - yT)*w^3.
Fp12 lineValue(const Fp2& lambda, const Fp2& xT, const Fp2& yT, const G1Affine& p)
{
    Fp12 l;
    l.c0.c0 = Fp2{p.y, Fp::zero()};
    l.c1.c0 = -(lambda * p.x);
    l.c1.c1 = lambda * xT - yT;
    return l;
}

struct TwistAccumulator {
    Fp2 x;
    Fp2 y;
    bool infinity = false;

    Fp12 doubleStep(const G1Affine& p)
    {
        Fp2 x2 = x.square();
        Fp2 lambda = (x2.doubled() + x2) * y.doubled().inverse();
        Fp12 l = lineValue(lambda, x, y, p);
        Fp2 nx = lambda.square() - x.doubled();
        y = lambda * (x - nx) - y;
        x = nx;
        return l;
    }

    Fp12 addStep(const G2Affine& q, const G1Affine& p)
    {
        if (infinity) {
            x = q.x;
            y = q.y;
            infinity = false;
            return Fp12::one();
        }
        if (x == q.x) {
            if (y == q.y) {
                return doubleStep(p);
            }
            // vertical line lies in Fp6 and is erased by the final exponentiation
            infinity = true;
            return Fp12::one();
        }
        Fp2 lambda = (q.y - y) * (q.x - x).inverse();
        Fp12 l = lineValue(lambda, x, y, p);
        Fp2 nx = lambda.square() - x - q.x;
        y = lambda * (x - nx) - y;
        x = nx;
        return l;
    }
};

G2Affine twistFrobenius(const G2Affine& q)
{
    if (q.infinity) {
        return q;
    }
    const auto& g = frobeniusTable().gamma;
    return {q.x.conjugate() * g[2], q.y.conjugate() * g[3], false};
}

} // namespace

Fp2 Fp2::pow(const U256& e) const
{
    Fp2 acc = one();
    for (std::size_t i = e.bitLength(); i-- > 0;) {
        acc = acc.square();
        if (e.bit(i)) {
            acc *= *this;
        }
    }
    return acc;
}

Fp6 Fp6::operator*(const Fp6& o) const
{
    Fp2 t0 = c0 * o.c0;
    Fp2 t1 = c1 * o.c1;
    Fp2 t2 = c2 * o.c2;
    Fp6 r;
    r.c0 = t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mulByXi();
    r.c1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mulByXi();
    r.c2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return r;
}

Fp6 Fp6::inverse() const
{
    Fp2 a = c0.square() - (c1 * c2).mulByXi();
    Fp2 b = c2.square().mulByXi() - c0 * c1;
    Fp2 c = c1.square() - c0 * c2;
    Fp2 f = c0 * a + (c2 * b).mulByXi() + (c1 * c).mulByXi();
    Fp2 fi = f.inverse();
    return {a * fi, b * fi, c * fi};
}

Fp12 Fp12::operator*(const Fp12& o) const
{
    Fp6 t0 = c0 * o.c0;
    Fp6 t1 = c1 * o.c1;
    return {t0 + t1.mulByV(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
}

Fp12 Fp12::square() const
{
    // (c0 + c1 w)^2 = c0^2 + c1^2 v + 2 c0 c1 w, with two Fp6 products
    Fp6 t = c0 * c1;
    Fp6 mixed = (c0 + c1) * (c0 + c1.mulByV());
    return {mixed - t - t.mulByV(), t + t};
}

Fp12 Fp12::inverse() const
{
    Fp6 denom = (c0.square() - c1.square().mulByV()).inverse();
    return {c0 * denom, -(c1 * denom)};
}

Fp12 Fp12::frobenius() const
{
    // coefficient of w^j maps to conj(a_j) * gamma_j
    const auto& g = frobeniusTable().gamma;
    Fp12 r;
    r.c0.c0 = c0.c0.conjugate();
    r.c1.c0 = c1.c0.conjugate() * g[1];
    r.c0.c1 = c0.c1.conjugate() * g[2];
    r.c1.c1 = c1.c1.conjugate() * g[3];
    r.c0.c2 = c0.c2.conjugate() * g[4];
    r.c1.c2 = c1.c2.conjugate() * g[5];
    return r;
}

Fp12 Fp12::pow(std::span<const uint64_t> exponentLimbs) const
{
    Fp12 acc = one();
    for (std::size_t i = exponentLimbs.size() * 64; i-- > 0;) {
        acc = acc.square();
        if (((exponentLimbs[i / 64] >> (i % 64)) & 1U) != 0) {
            acc *= *this;
        }
    }
    return acc;
}

Fp g1B() { return Fp::fromU64(3); }

Fp2 g2B()
{
    static const Fp2 b = Fp2{Fp::fromU64(9), Fp::one()}.inverse() * Fp::fromU64(3);
    return b;
}

G1Affine g1Generator() { return {Fp::fromU64(1), Fp::fromU64(2), false}; }

G2Affine g2Generator()
{
    static const G2Affine g{
        {parseHex("1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed"),
         parseHex("198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2")},
        {parseHex("12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa"),
         parseHex("090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b")},
        false};
    return g;
}

bool isOnCurve(const G1Affine& p) { return onCurve(p, g1B()); }
bool isOnCurve(const G2Affine& p) { return onCurve(p, g2B()); }

bool isInSubgroup(const G2Affine& p)
{
    if (p.infinity) {
        return true;
    }
    return p.toJacobian().mul(Fr::kModulus).isIdentity();
}

std::vector<G1Affine> batchToAffine(std::span<const G1> points)
{
    std::vector<G1Affine> out(points.size());
    std::vector<Fp> prefix(points.size());
    Fp acc = Fp::one();
    for (std::size_t i = 0; i < points.size(); ++i) {
        prefix[i] = acc;
        if (!points[i].isIdentity()) {
            acc *= points[i].z;
        }
    }
    Fp inv = acc.inverse();
    for (std::size_t i = points.size(); i-- > 0;) {
        if (points[i].isIdentity()) {
            out[i] = G1Affine::identity();
            continue;
        }
        Fp zi = inv * prefix[i];
        inv *= points[i].z;
        Fp zi2 = zi.square();
        out[i] = {points[i].x * zi2, points[i].y * zi2 * zi, false};
    }
    return out;
}

std::array<uint8_t, kG1Bytes> encodeG1(const G1Affine& p)
{
    std::array<uint8_t, kG1Bytes> out{};
    if (p.infinity) {
        return out;
    }
    auto x = p.x.toBytes();
    auto y = p.y.toBytes();
    std::copy(x.begin(), x.end(), out.begin());
    std::copy(y.begin(), y.end(), out.begin() + 32);
    return out;
}

std::optional<G1Affine> decodeG1(std::span<const uint8_t, kG1Bytes> in)
{
    if (std::all_of(in.begin(), in.end(), [](uint8_t b) { return b == 0; })) {
        return G1Affine::identity();
    }
    auto x = Fp::fromBytes(in.subspan<0, 32>());
    auto y = Fp::fromBytes(in.subspan<32, 32>());
    if (!x || !y) {
        return std::nullopt;
    }
    G1Affine p{*x, *y, false};
    if (!isOnCurve(p)) {
        return std::nullopt;
    }
    return p;
}

std::array<uint8_t, kG2Bytes> encodeG2(const G2Affine& p)
{
    std::array<uint8_t, kG2Bytes> out{};
    if (p.infinity) {
        return out;
    }
    const std::array<const Fp*, 4> parts{&p.x.c1, &p.x.c0, &p.y.c1, &p.y.c0};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto b = parts[i]->toBytes();
        std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(32 * i));
    }
    return out;
}

std::optional<G2Affine> decodeG2(std::span<const uint8_t, kG2Bytes> in)
{
    if (std::all_of(in.begin(), in.end(), [](uint8_t b) { return b == 0; })) {
        return G2Affine::identity();
    }
    std::array<Fp, 4> parts;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto v = Fp::fromBytes(std::span<const uint8_t, 32>(in.data() + 32 * i, 32));
        if (!v) {
            return std::nullopt;
        }
        parts[i] = *v;
    }
    G2Affine p{{parts[1], parts[0]}, {parts[3], parts[2]}, false};
    if (!isOnCurve(p) || !isInSubgroup(p)) {
        return std::nullopt;
    }
    return p;
}

Fp12 millerLoop(const G1Affine& p, const G2Affine& q)
{
    if (p.infinity || q.infinity) {
        return Fp12::one();
    }
    Fp12 f = Fp12::one();
    TwistAccumulator t{q.x, q.y, false};
    for (std::size_t i = kAteLoopCount.bitLength() - 1; i-- > 0;) {
        f = f.square() * t.doubleStep(p);
        if (kAteLoopCount.bit(i)) {
            f *= t.addStep(q, p);
        }
    }
    G2Affine q1 = twistFrobenius(q);
    G2Affine q2 = twistFrobenius(q1);
    f *= t.addStep(q1, p);
    f *= t.addStep(-q2, p);
    return f;
}

Fp12 finalExponentiation(const Fp12& f)
{
    Fp12 t = f.conjugate() * f.inverse();
    t = t.frobenius().frobenius() * t;
    return t.pow(kHardExponent);
}

Fp12 pairing(const G1Affine& p, const G2Affine& q) { return finalExponentiation(millerLoop(p, q)); }

bool pairingProductIsOne(std::span<const G1Affine> ps, std::span<const G2Affine> qs)
{
    Fp12 acc = Fp12::one();
    for (std::size_t i = 0; i < ps.size() && i < qs.size(); ++i) {
        acc *= millerLoop(ps[i], qs[i]);
    }
    return finalExponentiation(acc).isOne();
}

} // namespace verkle::bn254
