#include "verkle/kzg.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "verkle/errors.hpp"
#include "verkle/msm.hpp"

namespace verkle::kzg {

namespace {

constexpr std::array<uint8_t, 4> kSetupMagic{'K', 'Z', 'G', 'S'};
constexpr uint8_t kSetupVersion = 0x01;

// coefficients of prod_{j<n} (X - j), length n + 1
std::vector<Scalar> vanishingPolynomial(std::size_t n)
{
    std::vector<Scalar> z{Scalar::one()};
    for (std::size_t j = 0; j < n; ++j) {
        Scalar root = Scalar::fromU64(j);
        std::vector<Scalar> next(z.size() + 1);
        for (std::size_t k = 0; k < z.size(); ++k) {
            next[k + 1] += z[k];
            next[k] -= z[k] * root;
        }
        z = std::move(next);
    }
    return z;
}

// 1 / prod_{j != i, j < n} (i - j) for every i < n
std::vector<Scalar> barycentricWeights(std::size_t n)
{
    std::vector<Scalar> fact(n, Scalar::one());
    for (std::size_t k = 1; k < n; ++k) {
        fact[k] = fact[k - 1] * Scalar::fromU64(k);
    }
    std::vector<Scalar> invFact(n);
    invFact[n - 1] = fact[n - 1].inverse();
    for (std::size_t k = n - 1; k > 0; --k) {
        invFact[k - 1] = invFact[k] * Scalar::fromU64(k);
    }
    // prod_{j != i} (i - j) = i! * (n-1-i)! * (-1)^(n-1-i)
    std::vector<Scalar> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar v = invFact[i] * invFact[n - 1 - i];
        w[i] = ((n - 1 - i) % 2 == 0) ? v : -v;
    }
    return w;
}

// Z(X) / (X - root) where Z vanishes at root; result has length z.size() - 1
std::vector<Scalar> exactQuotient(std::span<const Scalar> z, const Scalar& root)
{
    std::vector<Scalar> q(z.size() - 1);
    Scalar carry = Scalar::zero();
    for (std::size_t k = z.size() - 1; k > 0; --k) {
        carry = z[k] + carry * root;
        q[k - 1] = carry;
    }
    return q;
}

std::span<const Scalar> trimmed(const Polynomial& poly)
{
    if (poly.isZero()) {
        return {};
    }
    return std::span<const Scalar>(poly.coefficients).first(poly.degree() + 1);
}

void checkDegree(const TrustedSetup& setup, const Polynomial& poly)
{
    if (!poly.isZero() && poly.degree() > setup.maxDegree()) {
        throw CapacityError("polynomial degree " + std::to_string(poly.degree()) + " exceeds setup degree " +
                            std::to_string(setup.maxDegree()));
    }
}

template <std::size_t N>
std::span<const uint8_t, N> fixedSpan(std::span<const uint8_t> bytes, const char* what)
{
    if (bytes.size() != N) {
        throw DecodeError(std::string(what) + ": expected " + std::to_string(N) + " bytes, got " +
                          std::to_string(bytes.size()));
    }
    return std::span<const uint8_t, N>(bytes.data(), N);
}

} // namespace

std::size_t Polynomial::degree() const
{
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        if (!coefficients[i].isZero()) {
            return i;
        }
    }
    return 0;
}

bool Polynomial::isZero() const
{
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& c) { return c.isZero(); });
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    r.coefficients.resize(std::max(a.coefficients.size(), b.coefficients.size()));
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
        if (i < a.coefficients.size()) {
            r.coefficients[i] += a.coefficients[i];
        }
        if (i < b.coefficients.size()) {
            r.coefficients[i] += b.coefficients[i];
        }
    }
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b)
{
    auto ta = trimmed(a);
    auto tb = trimmed(b);
    return std::equal(ta.begin(), ta.end(), tb.begin(), tb.end());
}

TrustedSetup::TrustedSetup(std::vector<G1Affine> g1Powers, G2Affine g2Generator, G2Affine g2Tau)
    : g1Powers_(std::move(g1Powers)), g2Generator_(g2Generator), g2Tau_(g2Tau)
{
}

TrustedSetup TrustedSetup::generate(std::span<const uint8_t> seed, std::size_t maxDegree)
{
    if (maxDegree < 1) {
        throw ArgumentError("setup maxDegree must be at least 1");
    }
    if (maxDegree > kMaxSetupDegree) {
        throw CapacityError("setup maxDegree " + std::to_string(maxDegree) + " exceeds bound " +
                            std::to_string(kMaxSetupDegree));
    }
    Scalar tau = hashToScalar(seed);
    if (tau.isZero()) {
        throw ArgumentError("seed hashes to the zero scalar");
    }

    std::vector<Scalar> powers(maxDegree + 1);
    powers[0] = Scalar::one();
    for (std::size_t k = 1; k <= maxDegree; ++k) {
        powers[k] = powers[k - 1] * tau;
    }

    const bn254::G1 g1 = bn254::g1Generator().toJacobian();
    std::vector<bn254::G1> projective(maxDegree + 1);
    const auto count = static_cast<std::ptrdiff_t>(projective.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        projective[static_cast<std::size_t>(k)] = bn254::mulScalar(g1, powers[static_cast<std::size_t>(k)]);
    }

    G2Affine g2 = bn254::g2Generator();
    G2Affine g2Tau = G2Affine::fromJacobian(bn254::mulScalar(g2.toJacobian(), tau));
    return TrustedSetup(bn254::batchToAffine(projective), g2, g2Tau);
}

Bytes TrustedSetup::encode() const
{
    Bytes out(kSetupMagic.begin(), kSetupMagic.end());
    out.push_back(kSetupVersion);
    auto d = static_cast<uint32_t>(maxDegree());
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(d >> shift));
    }
    for (const auto& p : g1Powers_) {
        auto b = bn254::encodeG1(p);
        out.insert(out.end(), b.begin(), b.end());
    }
    for (const auto* p : {&g2Generator_, &g2Tau_}) {
        auto b = bn254::encodeG2(*p);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

TrustedSetup TrustedSetup::decode(std::span<const uint8_t> bytes)
{
    constexpr std::size_t kHeader = 4 + 1 + 4;
    if (bytes.size() < kHeader || !std::equal(kSetupMagic.begin(), kSetupMagic.end(), bytes.begin())) {
        throw DecodeError("setup: bad magic");
    }
    if (bytes[4] != kSetupVersion) {
        throw DecodeError("setup: unsupported version " + std::to_string(bytes[4]));
    }
    uint32_t d = 0;
    for (std::size_t i = 5; i < 9; ++i) {
        d = (d << 8) | bytes[i];
    }
    if (d < 1 || d > kMaxSetupDegree) {
        throw DecodeError("setup: maxDegree out of range");
    }
    const std::size_t expected = kHeader + (std::size_t{d} + 1) * bn254::kG1Bytes + 2 * bn254::kG2Bytes;
    if (bytes.size() != expected) {
        throw DecodeError("setup: expected " + std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()));
    }
    std::vector<G1Affine> g1(std::size_t{d} + 1);
    std::size_t off = kHeader;
    for (auto& p : g1) {
        auto decoded = bn254::decodeG1(std::span<const uint8_t, bn254::kG1Bytes>(bytes.data() + off, bn254::kG1Bytes));
        if (!decoded) {
            throw DecodeError("setup: invalid G1 point at offset " + std::to_string(off));
        }
        p = *decoded;
        off += bn254::kG1Bytes;
    }
    std::array<G2Affine, 2> g2;
    for (auto& p : g2) {
        auto decoded = bn254::decodeG2(std::span<const uint8_t, bn254::kG2Bytes>(bytes.data() + off, bn254::kG2Bytes));
        if (!decoded) {
            throw DecodeError("setup: invalid G2 point at offset " + std::to_string(off));
        }
        p = *decoded;
        off += bn254::kG2Bytes;
    }
    TrustedSetup setup(std::move(g1), g2[0], g2[1]);
    if (!setup.pairingConsistent()) {
        throw DecodeError("setup: pairing consistency check failed");
    }
    return setup;
}

bool TrustedSetup::pairingConsistent() const
{
    if (g1Powers_.size() < 2) {
        return false;
    }
    std::array<G1Affine, 2> ps{g1Powers_[1], -g1Powers_[0]};
    std::array<G2Affine, 2> qs{g2Generator_, g2Tau_};
    return bn254::pairingProductIsOne(ps, qs);
}

Scalar hashToScalar(std::span<const uint8_t> bytes)
{
    Digest32 d = keccak256(bytes);
    return Scalar::fromBytesReduced(d);
}

Polynomial interpolateVector(std::span<const Scalar> values)
{
    const std::size_t n = values.size();
    if (n == 0) {
        throw ArgumentError("interpolateVector: empty input");
    }
    const std::vector<Scalar> z = vanishingPolynomial(n);
    const std::vector<Scalar> weights = barycentricWeights(n);

    Polynomial out;
    out.coefficients.assign(n, Scalar::zero());
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i].isZero()) {
            continue;
        }
        Scalar scale = values[i] * weights[i];
        std::vector<Scalar> basis = exactQuotient(z, Scalar::fromU64(i));
        for (std::size_t k = 0; k < n; ++k) {
            out.coefficients[k] += basis[k] * scale;
        }
    }
    return out;
}

Scalar evaluate(const Polynomial& poly, const Scalar& z)
{
    Scalar acc = Scalar::zero();
    for (std::size_t i = poly.coefficients.size(); i-- > 0;) {
        acc = acc * z + poly.coefficients[i];
    }
    return acc;
}

std::pair<Polynomial, Scalar> divideByLinear(const Polynomial& poly, const Scalar& z)
{
    auto coeffs = trimmed(poly);
    if (coeffs.size() <= 1) {
        return {Polynomial{}, coeffs.empty() ? Scalar::zero() : coeffs[0]};
    }
    Polynomial q;
    q.coefficients.resize(coeffs.size() - 1);
    Scalar carry = Scalar::zero();
    for (std::size_t k = coeffs.size() - 1; k > 0; --k) {
        carry = coeffs[k] + carry * z;
        q.coefficients[k - 1] = carry;
    }
    // remainder of f / (X - z) is f(z)
    Scalar value = coeffs[0] + carry * z;
    return {std::move(q), value};
}

Commitment commit(const TrustedSetup& setup, const Polynomial& poly)
{
    checkDegree(setup, poly);
    auto coeffs = trimmed(poly);
    return Commitment{G1Affine::fromJacobian(msm::msmParallel(setup.g1Powers(), coeffs))};
}

OpeningProof openAt(const TrustedSetup& setup, const Polynomial& poly, const Scalar& z)
{
    checkDegree(setup, poly);
    auto [quotient, value] = divideByLinear(poly, z);
    assert(evaluate(poly, z) == value);
    return OpeningProof{commit(setup, quotient).point};
}

bool verifyOpening(const TrustedSetup& setup, const Commitment& c, const Scalar& z, const Scalar& y,
                   const OpeningProof& proof)
{
    const G1Affine& g1 = setup.g1Powers()[0];
    const G2Affine& g2 = setup.g2Generator();
    // e(C - y G1, G2) * e(-W, [tau]G2 - z G2) == 1
    G1Affine lhs = G1Affine::fromJacobian(c.point.toJacobian() - bn254::mulScalar(g1.toJacobian(), y));
    bn254::G2Affine shifted =
        G2Affine::fromJacobian(setup.g2Tau().toJacobian() - bn254::mulScalar(g2.toJacobian(), z));
    std::array<G1Affine, 2> ps{lhs, -proof.witness};
    std::array<G2Affine, 2> qs{g2, shifted};
    return bn254::pairingProductIsOne(ps, qs);
}

Scalar commitmentToScalar(const Commitment& c)
{
    auto bytes = bn254::encodeG1(c.point);
    return hashToScalar(bytes);
}

std::array<uint8_t, 32> encodeScalar(const Scalar& s) { return s.toBytes(); }

Scalar decodeScalar(std::span<const uint8_t> bytes)
{
    auto v = Scalar::fromBytes(fixedSpan<32>(bytes, "scalar"));
    if (!v) {
        throw DecodeError("scalar: value not below the group order");
    }
    return *v;
}

std::array<uint8_t, 64> encodeCommitment(const Commitment& c) { return bn254::encodeG1(c.point); }

Commitment decodeCommitment(std::span<const uint8_t> bytes)
{
    auto p = bn254::decodeG1(fixedSpan<64>(bytes, "commitment"));
    if (!p) {
        throw DecodeError("commitment: not a valid G1 point");
    }
    return Commitment{*p};
}

std::array<uint8_t, 64> encodeOpeningProof(const OpeningProof& p) { return bn254::encodeG1(p.witness); }

OpeningProof decodeOpeningProof(std::span<const uint8_t> bytes)
{
    auto p = bn254::decodeG1(fixedSpan<64>(bytes, "opening proof"));
    if (!p) {
        throw DecodeError("opening proof: not a valid G1 point");
    }
    return OpeningProof{*p};
}

CommitmentKey::CommitmentKey(TrustedSetup setup, std::size_t width) : setup_(std::move(setup))
{
    if (width == 0 || width > setup_.maxDegree() + 1) {
        throw ConfigError("commitment key width " + std::to_string(width) + " needs setup degree >= " +
                          std::to_string(width == 0 ? 0 : width - 1));
    }
    const std::vector<Scalar> z = vanishingPolynomial(width);
    const std::vector<Scalar> weights = barycentricWeights(width);
    std::vector<bn254::G1> points(width);
    const auto count = static_cast<std::ptrdiff_t>(width);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        std::vector<Scalar> basis = exactQuotient(z, Scalar::fromU64(idx));
        for (auto& c : basis) {
            c *= weights[idx];
        }
        points[idx] = msm::msmParallel(setup_.g1Powers(), basis);
    }
    basis_ = bn254::batchToAffine(points);
}

Commitment CommitmentKey::commitSparse(std::span<const std::pair<std::size_t, Scalar>> entries) const
{
    std::vector<G1Affine> bases;
    std::vector<Scalar> scalars;
    bases.reserve(entries.size());
    scalars.reserve(entries.size());
    for (const auto& [slot, value] : entries) {
        if (slot >= basis_.size()) {
            throw ArgumentError("commitSparse: slot " + std::to_string(slot) + " outside domain");
        }
        if (!value.isZero()) {
            bases.push_back(basis_[slot]);
            scalars.push_back(value);
        }
    }
    return Commitment{G1Affine::fromJacobian(msm::msmParallel(bases, scalars))};
}

Commitment CommitmentKey::commitDense(std::span<const Scalar> values) const
{
    if (values.size() > basis_.size()) {
        throw ArgumentError("commitDense: more values than domain slots");
    }
    return Commitment{G1Affine::fromJacobian(msm::msmParallel(std::span<const G1Affine>(basis_).first(values.size()), values))};
}

} // namespace verkle::kzg
