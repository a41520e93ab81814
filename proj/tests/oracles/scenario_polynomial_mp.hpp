#pragma once

// 50-digit evaluation of the wait-and-judge polynomial. Binomials and powers
// come from multiplicative recurrences, so nothing here shares code with the
// log-space implementation under test.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>

namespace share_sense::oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real choose(int n, int k) {
    Real r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

struct MpValue {
    Real value;
    Real max_term;

    double normalized() const {
        if (max_term == 0) return 0.0;
        return static_cast<double>(abs(value) / max_term);
    }
};

inline MpValue poly_value(int m, int k, double beta_d, double t_d) {
    const Real beta = beta_d;
    const Real t = t_d;
    MpValue out{0, 0};
    auto add = [&out](const Real& term) {
        out.value += term;
        out.max_term = std::max(out.max_term, Real(abs(term)));
    };

    // Walk i upward from k keeping C(i, k) and t^(i-k).
    Real binom = 1;
    Real power = 1;
    const Real head = beta / (2 * m);
    const Real tail = beta / (6 * m);
    for (int i = k; i <= 4 * m; ++i) {
        if (i > k) {
            binom = binom * i / (i - k);
            power *= t;
        }
        if (i < m) {
            add(-head * binom * power);
        } else if (i == m) {
            add(k < m ? binom * power : Real(1));
        } else {
            add(-tail * binom * power);
        }
    }
    return out;
}

}  // namespace share_sense::oracle
