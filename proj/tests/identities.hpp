#pragma once

// Randomized checks of the KP structure identities, shared by the unit tests
// and the acceptance report.

#include <random>

#include "support.hpp"

namespace testing {

inline std::vector<Elem> lower(const KPCtx& kp, const std::vector<Elem>& v) {
    std::vector<Elem> out(kp.m(), Elem(kp.ring()));
    for (std::size_t i = 0; i < kp.m(); ++i)
        for (std::size_t j = 0; j < kp.m(); ++j) out[i] += kp.g()(i, j) * v[j];
    return out;
}

inline Elem dot(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    Elem acc(a.at(0).ctx());
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

struct Tally {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void add(bool ok, const char* what) {
        ++checked;
        if (ok) return;
        if (!failures) first_failure = what;
        ++failures;
    }
};

/// D^ij P_j(a) = P^i(a), P^ij D_j(a) = P^i(a), D^i_j D^jk = D^ik, the pairing
/// D^i(a) P_i(b) = {a,b}, D^2 = D, g-self-adjointness of D and the
/// non-degeneracy witness, over `samples` random draws.
inline Tally structural_identities(const KPCtx& kp, std::mt19937_64& rng, int samples) {
    const auto& r = kp.ring();
    const std::size_t m = kp.m();
    Tally t;
    auto Dg = kp.D() * kp.g();
    t.add((Dg * kp.D() - kp.D()).is_zero(), "D^i_j D^jk = D^ik");
    t.add((Dg * Dg - Dg).is_zero(), "D^2 = D");

    for (int s = 0; s < samples; ++s) {
        auto a = random_elem(rng, r);
        auto b = random_elem(rng, r);
        std::vector<Elem> Pa, Pb;
        for (std::size_t i = 0; i < m; ++i) {
            Pa.push_back(kp.P().bracket(Elem::generator(r, i), a));
            Pb.push_back(kp.P().bracket(Elem::generator(r, i), b));
        }
        auto Da = kp.d_apply_all(a);
        auto Pa_low = lower(kp, Pa);
        auto Da_low = lower(kp, Da);
        for (std::size_t i = 0; i < m; ++i) {
            Elem s1(r), s2(r);
            for (std::size_t j = 0; j < m; ++j) {
                s1 += kp.D()(i, j) * Pa_low[j];
                s2 += kp.P()(i, j) * Da_low[j];
            }
            t.add(s1 == Pa[i], "D^ij P_j(a) = P^i(a)");
            t.add(s2 == Pa[i], "P^ij D_j(a) = P^i(a)");
        }
        t.add(dot(Da, lower(kp, Pb)) == kp.P().bracket(a, b), "D^i(a) P_i(b) = {a,b}");

        std::vector<Elem> X, Y;
        for (std::size_t i = 0; i < m; ++i) {
            X.push_back(random_elem(rng, r, 1, 2));
            Y.push_back(random_elem(rng, r, 1, 2));
        }
        auto DX = kp.project(X);
        t.add(kp.project(DX) == DX, "D(D(X)) = D(X)");
        t.add(dot(DX, lower(kp, Y)) == dot(X, lower(kp, kp.project(Y))), "g(D(X),Y) = g(X,D(Y))");

        // alpha minus g(alpha, D^i) D_i pairs to zero with every D^i and must act as zero.
        auto alpha = random_deriv(rng, kp);
        Deriv rebuilt = kp.zero_deriv();
        for (std::size_t i = 0; i < m; ++i) {
            auto p = kp.g_form(alpha, kp.generator(i));
            for (std::size_t j = 0; j < m; ++j) rebuilt.coeffs[j] += p * kp.g()(i, j);
        }
        auto w = alpha - rebuilt;
        bool orthogonal = true;
        for (std::size_t i = 0; i < m; ++i) orthogonal = orthogonal && kp.g_form(w, kp.generator(i)).is_zero();
        t.add(orthogonal, "g(w, D^i) = 0");
        t.add(kp.same_action(w, kp.zero_deriv()), "non-degeneracy");
    }
    return t;
}

}  // namespace testing
