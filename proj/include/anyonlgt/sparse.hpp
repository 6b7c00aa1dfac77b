#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "anyonlgt/qdeform.hpp"  // cplx

namespace anyonlgt {

/// Triplet-form complex sparse matrix over a basis.  Canonicalization sorts
/// by (row, col) and merges duplicates, so assembly output is bit-stable
/// regardless of insertion order.
class SparseOperator {
public:
    struct Triplet {
        std::int64_t row, col;
        cplx value;
    };

    SparseOperator() = default;
    explicit SparseOperator(std::int64_t dim) : dim_(dim) {}

    std::int64_t dim() const { return dim_; }
    const std::vector<Triplet>& triplets() const { return t_; }
    bool hermitian_flag() const { return hermitian_; }

    void add(std::int64_t r, std::int64_t c, cplx v) {
        if (r < 0 || r >= dim_ || c < 0 || c >= dim_)
            throw std::out_of_range("SparseOperator::add: index out of range");
        t_.push_back({r, c, v});
        canonical_ = false;
    }

    void canonicalize() {
        if (canonical_) return;
        std::sort(t_.begin(), t_.end(), [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        std::vector<Triplet> out;
        out.reserve(t_.size());
        for (const auto& t : t_) {
            if (!out.empty() && out.back().row == t.row && out.back().col == t.col)
                out.back().value += t.value;
            else
                out.push_back(t);
        }
        std::erase_if(out, [](const Triplet& t) { return t.value == cplx(0.0, 0.0); });
        t_ = std::move(out);
        canonical_ = true;
    }

    /// max |H - H^dagger| entry.
    double hermiticity_residual() const {
        std::map<std::pair<std::int64_t, std::int64_t>, cplx> m;
        for (const auto& t : t_) m[{t.row, t.col}] += t.value;
        double r = 0.0;
        for (const auto& [rc, v] : m) {
            auto it = m.find({rc.second, rc.first});
            const cplx vt = it == m.end() ? cplx(0.0) : it->second;
            r = std::max(r, std::abs(v - std::conj(vt)));
        }
        return r;
    }

    /// Marks the operator Hermitian after verifying it to 1e-12.
    void set_hermitian() {
        if (hermiticity_residual() > 1e-12)
            throw std::logic_error("SparseOperator::set_hermitian: residual > 1e-12");
        hermitian_ = true;
    }

    SparseOperator adjoint() const {
        SparseOperator a(dim_);
        for (const auto& t : t_) a.add(t.col, t.row, std::conj(t.value));
        a.canonicalize();
        return a;
    }

    SparseOperator& operator+=(const SparseOperator& o) {
        if (o.dim_ != dim_) throw std::invalid_argument("SparseOperator: dim mismatch");
        t_.insert(t_.end(), o.t_.begin(), o.t_.end());
        canonical_ = false;
        return *this;
    }

    SparseOperator& scale(cplx s) {
        for (auto& t : t_) t.value *= s;
        return *this;
    }

    SparseOperator multiply(const SparseOperator& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("SparseOperator: dim mismatch");
        // column-indexed view of o
        std::vector<std::vector<Triplet>> by_row(dim_);
        for (const auto& t : o.t_) by_row[t.row].push_back(t);
        SparseOperator r(dim_);
        for (const auto& a : t_)
            for (const auto& b : by_row[a.col]) r.add(a.row, b.col, a.value * b.value);
        r.canonicalize();
        return r;
    }

    void matvec(std::span<const cplx> x, std::span<cplx> y) const {
        if (static_cast<std::int64_t>(x.size()) != dim_ ||
            static_cast<std::int64_t>(y.size()) != dim_)
            throw std::invalid_argument("SparseOperator::matvec: size mismatch");
        std::fill(y.begin(), y.end(), cplx(0.0));
        for (const auto& t : t_) y[t.row] += t.value * x[t.col];
    }

    std::vector<std::vector<cplx>> dense() const {
        std::vector<std::vector<cplx>> d(dim_, std::vector<cplx>(dim_, cplx(0.0)));
        for (const auto& t : t_) d[t.row][t.col] += t.value;
        return d;
    }

    static SparseOperator identity(std::int64_t dim) {
        SparseOperator s(dim);
        for (std::int64_t i = 0; i < dim; ++i) s.add(i, i, 1.0);
        s.canonicalize();
        return s;
    }

    /// max entry of A - B.
    static double max_diff(const SparseOperator& a, const SparseOperator& b) {
        std::map<std::pair<std::int64_t, std::int64_t>, cplx> m;
        for (const auto& t : a.triplets()) m[{t.row, t.col}] += t.value;
        for (const auto& t : b.triplets()) m[{t.row, t.col}] -= t.value;
        double r = 0.0;
        for (const auto& [rc, v] : m) r = std::max(r, std::abs(v));
        return r;
    }

private:
    std::int64_t dim_ = 0;
    std::vector<Triplet> t_;
    bool canonical_ = false;
    bool hermitian_ = false;
};

} // namespace anyonlgt
