#pragma once

#include <memory>
#include <string>

#include "anyonlgt/category.hpp"

namespace anyonlgt {

namespace detail {

inline void init_tables(FusionCategoryData& m, std::size_t n) {
    m.objects.resize(n);
    m.dual_.resize(n);
    m.fusion_.assign(n * n * n, 0);
    m.qdim_.assign(n, 1.0);
    m.spin_.assign(n, 1.0);
    for (Label a = 0; a < n; ++a) m.objects[a].index = a;
}

inline std::string half_int_name(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

} // namespace detail

/// {1, psi}: the braided fusion category of the vacuum and a fermion.
/// Z2 fusion, trivial F, R^{psi psi}_1 = -1, theta_psi = -1.
inline std::shared_ptr<const FusionCategoryData> make_fermion_layer() {
    auto m = std::make_shared<FusionCategoryData>();
    m->name = "{1,psi}";
    detail::init_tables(*m, 2);
    m->objects[0].name = "1";
    m->objects[1].name = "psi";
    m->vacuum = 0;
    for (Label a = 0; a < 2; ++a) {
        m->dual_[a] = a;
        for (Label b = 0; b < 2; ++b) m->fusion_[(a * 2 + b) * 2 + (a ^ b)] = 1;
    }
    m->spin_[1] = -1.0;
    m->f_eval = [](const FusionCategoryData&, Label, Label, Label, Label, Label, Label) {
        return cplx(1.0);
    };
    m->r_eval = [](const FusionCategoryData&, Label a, Label b, Label) {
        return (a == 1 && b == 1) ? cplx(-1.0) : cplx(1.0);
    };
    return m;
}

/// U(1)_k for even k >= 2: the modular theory Z_k^(1/2).  Objects 0..k-1,
/// fusion a x b = a+b mod k, theta_m = exp(i pi m^2 / k),
/// [F^{abc}] = exp(i pi a (b+c-(b+c mod k)) / k), R^{ab} = exp(i pi a b / k).
inline std::shared_ptr<const FusionCategoryData> make_u1k(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("make_u1k: the Z_k^(1/2) family needs even k >= 2");
    auto m = std::make_shared<FusionCategoryData>();
    m->name = "U(1)_" + std::to_string(k);
    const std::size_t n = static_cast<std::size_t>(k);
    detail::init_tables(*m, n);
    m->vacuum = 0;
    const double pi_over_k = std::numbers::pi / k;
    for (Label a = 0; a < n; ++a) {
        m->objects[a].name = std::to_string(a);
        m->dual_[a] = (n - a) % n;
        for (Label b = 0; b < n; ++b) m->fusion_[(a * n + b) * n + ((a + b) % n)] = 1;
        m->spin_[a] = std::polar(1.0, pi_over_k * static_cast<double>(a * a));
    }
    m->f_eval = [pi_over_k, n](const FusionCategoryData&, Label a, Label b, Label c,
                               Label, Label, Label) {
        const double carry = static_cast<double>(b + c - (b + c) % n);
        return std::polar(1.0, pi_over_k * static_cast<double>(a) * carry);
    };
    m->r_eval = [pi_over_k](const FusionCategoryData&, Label a, Label b, Label) {
        return std::polar(1.0, pi_over_k * static_cast<double>(a * b));
    };
    return m;
}

/// q-deformed Wigner 6j symbol by the Racah sum.  Labels are doubled spins
/// (n = 2j).  The sum runs from the largest triangle sum to the smallest
/// quadrilateral sum; terms with any negative factorial argument vanish from
/// the range by construction.
inline double racah_6j_q(int n1, int n2, int n3, int n4, int n5, int n6,
                         const QDeformation& q) {
    auto tri = [&](int a, int b, int c) {
        double num = qfactorial((-a + b + c) / 2, q) * qfactorial((a - b + c) / 2, q) *
                     qfactorial((a + b - c) / 2, q);
        return std::sqrt(num / qfactorial((a + b + c) / 2 + 1, q));
    };
    const int t1 = (n1 + n2 + n5) / 2, t2 = (n5 + n3 + n4) / 2;
    const int t3 = (n2 + n3 + n6) / 2, t4 = (n1 + n6 + n4) / 2;
    const int q1 = (n1 + n2 + n3 + n4) / 2, q2 = (n1 + n3 + n5 + n6) / 2;
    const int q3 = (n2 + n4 + n5 + n6) / 2;
    const int lo = std::max({t1, t2, t3, t4});
    const int hi = std::min({q1, q2, q3});
    double sum = 0.0;
    for (int t = lo; t <= hi; ++t) {
        double den = qfactorial(t - t1, q) * qfactorial(t - t2, q) *
                     qfactorial(t - t3, q) * qfactorial(t - t4, q) *
                     qfactorial(q1 - t, q) * qfactorial(q2 - t, q) * qfactorial(q3 - t, q);
        sum += (t % 2 == 0 ? 1.0 : -1.0) * qfactorial(t + 1, q) / den;
    }
    return tri(n1, n2, n5) * tri(n5, n3, n4) * tri(n2, n3, n6) * tri(n1, n6, n4) * sum;
}

/// SU(2)_k: objects j in {0, 1/2, ..., k/2} stored as doubled integers n = 2j.
/// Fusion obeys the triangle inequalities plus j1+j2+j3 integer and <= k.
/// qdim(j) = [2j+1]_q, theta_j = exp(2 pi i j(j+1)/(k+2)), F by the Racah
/// formula, R^{j1j2}_{j3} = (-1)^{j3-j1-j2} q^{(c3-c1-c2)/2} with c = j(j+1).
inline std::shared_ptr<const FusionCategoryData> make_su2k(int k) {
    if (k < 1) throw std::invalid_argument("make_su2k: k must be >= 1");
    auto m = std::make_shared<FusionCategoryData>();
    m->name = "SU(2)_" + std::to_string(k);
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    detail::init_tables(*m, n);
    m->vacuum = 0;
    const QDeformation q = QDeformation::level(k);
    for (Label a = 0; a < n; ++a) {
        m->objects[a].name = "j=" + detail::half_int_name(static_cast<int>(a));
        m->dual_[a] = a;
        m->qdim_[a] = qnumber(static_cast<int>(a) + 1, q);
        const double c = 0.25 * a * (a + 2.0);  // j(j+1)
        m->spin_[a] = std::polar(1.0, 2.0 * std::numbers::pi * c / (k + 2));
        for (Label b = 0; b < n; ++b)
            for (Label cch = 0; cch < n; ++cch) {
                const int na = static_cast<int>(a), nb = static_cast<int>(b),
                          nc = static_cast<int>(cch);
                const bool tri = std::abs(na - nb) <= nc && nc <= na + nb;
                const bool integer_sum = (na + nb + nc) % 2 == 0;
                const bool level = na + nb + nc <= 2 * k;
                if (tri && integer_sum && level) m->fusion_[(a * n + b) * n + cch] = 1;
            }
    }
    m->f_eval = [q](const FusionCategoryData&, Label a, Label b, Label c, Label d,
                    Label e, Label f) {
        const int n1 = static_cast<int>(a), n2 = static_cast<int>(b),
                  n3 = static_cast<int>(c), n4 = static_cast<int>(d),
                  n5 = static_cast<int>(e), n6 = static_cast<int>(f);
        const int ssum = (n1 + n2 + n3 + n4) / 2;
        const double sign = ssum % 2 == 0 ? 1.0 : -1.0;
        const double dims = std::sqrt(qnumber(n5 + 1, q) * qnumber(n6 + 1, q));
        return cplx(sign * dims * racah_6j_q(n1, n2, n3, n4, n5, n6, q));
    };
    m->r_eval = [q](const FusionCategoryData&, Label a, Label b, Label c) {
        const int n1 = static_cast<int>(a), n2 = static_cast<int>(b),
                  n3 = static_cast<int>(c);
        const int diff = (n3 - n1 - n2) / 2;
        const double sign = ((diff % 2) + 2) % 2 == 0 ? 1.0 : -1.0;
        const double expo = (n3 * (n3 + 2.0) - n1 * (n1 + 2.0) - n2 * (n2 + 2.0)) / 8.0;
        return sign * q.qpow(expo);
    };
    return m;
}

/// Deligne product A x B: objects are pairs (a1,a2) indexed a1*|B|+a2; fusion,
/// duals, qdims, spins, F and R multiply componentwise.
inline std::shared_ptr<const FusionCategoryData> deligne_product(
    std::shared_ptr<const FusionCategoryData> A,
    std::shared_ptr<const FusionCategoryData> B) {
    auto m = std::make_shared<FusionCategoryData>();
    const std::size_t na = A->size(), nb = B->size(), n = na * nb;
    m->name = A->name + " x " + B->name;
    detail::init_tables(*m, n);
    m->vacuum = A->vacuum * nb + B->vacuum;
    for (Label a1 = 0; a1 < na; ++a1)
        for (Label a2 = 0; a2 < nb; ++a2) {
            const Label a = a1 * nb + a2;
            m->objects[a].name =
                "(" + A->objects[a1].name + "," + B->objects[a2].name + ")";
            m->dual_[a] = A->dual(a1) * nb + B->dual(a2);
            m->qdim_[a] = A->qdim(a1) * B->qdim(a2);
            m->spin_[a] = A->spin(a1) * B->spin(a2);
            for (Label b1 = 0; b1 < na; ++b1)
                for (Label b2 = 0; b2 < nb; ++b2)
                    for (Label c1 = 0; c1 < na; ++c1)
                        for (Label c2 = 0; c2 < nb; ++c2)
                            if (A->fuses(a1, b1, c1) && B->fuses(a2, b2, c2))
                                m->fusion_[(a * n + b1 * nb + b2) * n + c1 * nb + c2] = 1;
        }
    m->f_eval = [A, B, nb](const FusionCategoryData&, Label a, Label b, Label c, Label d,
                           Label e, Label f) {
        return A->f_eval(*A, a / nb, b / nb, c / nb, d / nb, e / nb, f / nb) *
               B->f_eval(*B, a % nb, b % nb, c % nb, d % nb, e % nb, f % nb);
    };
    m->r_eval = [A, B, nb](const FusionCategoryData&, Label a, Label b, Label c) {
        return A->r_eval(*A, a / nb, b / nb, c / nb) *
               B->r_eval(*B, a % nb, b % nb, c % nb);
    };
    return m;
}

} // namespace anyonlgt
