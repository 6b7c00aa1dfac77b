#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "anyonlgt/qdeform.hpp"  // cplx

namespace anyonlgt {

/// Signed/phased tensor product of single-qubit Paulis in the normal form
///     P = i^p * X^x * Z^z
/// with per-qubit bit masks x, z and p in {0,1,2,3}.  All products, daggers
/// and commutation checks are exact integer arithmetic.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::size_t nqubits)
        : n_(nqubits), x_((nqubits + 63) / 64, 0), z_((nqubits + 63) / 64, 0) {}

    static PauliString identity(std::size_t n) { return PauliString(n); }
    static PauliString single(std::size_t n, std::size_t q, char op) {
        PauliString p(n);
        switch (op) {
            case 'I': break;
            case 'X': p.set_x(q); break;
            case 'Z': p.set_z(q); break;
            case 'Y': p.set_x(q); p.set_z(q); p.p_ = 1; break;  // Y = i X Z
            default: throw std::invalid_argument("PauliString: unknown op");
        }
        return p;
    }

    std::size_t nqubits() const { return n_; }
    bool x_bit(std::size_t q) const { return (x_[q / 64] >> (q % 64)) & 1; }
    bool z_bit(std::size_t q) const { return (z_[q / 64] >> (q % 64)) & 1; }
    void set_x(std::size_t q) { x_[q / 64] ^= 1ull << (q % 64); }
    void set_z(std::size_t q) { z_[q / 64] ^= 1ull << (q % 64); }
    int phase_pow() const { return p_; }

    cplx phase() const {
        switch (p_) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }

    PauliString operator*(const PauliString& o) const {
        if (n_ != o.n_) throw std::invalid_argument("PauliString: size mismatch");
        PauliString r(n_);
        std::size_t swaps = 0;  // Z^{z1} X^{x2} reordering signs
        for (std::size_t w = 0; w < x_.size(); ++w) {
            swaps += std::popcount(z_[w] & o.x_[w]);
            r.x_[w] = x_[w] ^ o.x_[w];
            r.z_[w] = z_[w] ^ o.z_[w];
        }
        r.p_ = static_cast<int>((p_ + o.p_ + 2 * swaps) % 4);
        return r;
    }

    PauliString dagger() const {
        PauliString r = *this;
        r.p_ = static_cast<int>((4 - p_ + 2 * xz_overlap()) % 4);
        return r;
    }

    PauliString times_phase(int ipow) const {
        PauliString r = *this;
        r.p_ = static_cast<int>((r.p_ + (ipow % 4 + 4)) % 4);
        return r;
    }

    bool commutes_with(const PauliString& o) const {
        std::size_t s = 0;
        for (std::size_t w = 0; w < x_.size(); ++w)
            s += std::popcount(x_[w] & o.z_[w]) + std::popcount(z_[w] & o.x_[w]);
        return s % 2 == 0;
    }

    bool same_masks(const PauliString& o) const { return x_ == o.x_ && z_ == o.z_; }
    bool operator==(const PauliString& o) const {
        return n_ == o.n_ && p_ == o.p_ && same_masks(o);
    }
    bool is_identity() const {
        if (p_ != 0) return false;
        for (std::size_t w = 0; w < x_.size(); ++w)
            if (x_[w] | z_[w]) return false;
        return true;
    }
    bool is_hermitian() const { return dagger() == *this; }

    std::size_t weight() const {
        std::size_t s = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) s += std::popcount(x_[w] | z_[w]);
        return s;
    }

    /// Action on a computational basis state: P|b> = phase * |b ^ x>.
    std::pair<std::uint64_t, cplx> apply(std::uint64_t bits) const {
        if (n_ > 64) throw std::invalid_argument("PauliString::apply: > 64 qubits");
        const std::size_t zpar = std::popcount(z_[0] & bits);
        cplx ph = phase();
        if (zpar % 2) ph = -ph;
        return {bits ^ x_[0], ph};
    }

    /// Display phase and per-site letters use the Y convention (XZ = -i Y).
    std::string to_string() const {
        static const char* pre[4] = {"+", "+i", "-", "-i"};
        std::string s = pre[(p_ + 4 - (xz_overlap() % 4)) % 4];
        for (std::size_t q = 0; q < n_; ++q) {
            const bool x = x_bit(q), z = z_bit(q);
            s += x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
        }
        return s;
    }

private:
    std::size_t xz_overlap() const {
        std::size_t s = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) s += std::popcount(x_[w] & z_[w]);
        return s;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> x_, z_;
    int p_ = 0;  // i^p
};

} // namespace anyonlgt
