#pragma once

#include <vector>

#include "supergrass/errors.hpp"

namespace supergrass {

/// Weight in the orthonormal mu-basis of the diagonal torus of gl_n.
using Weight = std::vector<int>;

/// (gamma, mu_i - mu_{i+1}) >= 0 for every simple root.
inline bool is_dominant(const Weight& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < w[i + 1]) return false;
    return true;
}

/// Highest weights of End T*(Gr_{n,k}) restricted to the reductive part, in
/// the four case splits on (k, n-k).
inline std::vector<Weight> endomorphism_weights(int n, int k) {
    if (k <= 0 || k >= n) throw config_error("weights need 0 < k < n");
    auto unit = [&](int i) {
        Weight w(static_cast<size_t>(n), 0);
        w[static_cast<size_t>(i - 1)] = 1;
        return w;
    };
    auto minus = [&](Weight a, const Weight& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
    };
    auto plus = [&](Weight a, const Weight& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };

    std::vector<Weight> out;
    out.push_back(Weight(static_cast<size_t>(n), 0)); // trivial summand
    const bool left = k > 1;      // adjoint summand of gl_k
    const bool right = n - k > 1; // adjoint summand of gl_{n-k}
    Weight ad1, ad2;
    if (left) ad1 = minus(unit(1), unit(k));
    if (right) ad2 = minus(unit(k + 1), unit(n));
    if (left && right) {
        out.push_back(ad1);
        out.push_back(ad2);
        out.push_back(plus(ad1, ad2));
    } else if (!left && right) {
        out.push_back(ad2);
    } else if (left && !right) {
        out.push_back(ad1);
    }
    return out;
}

/// The dominant weights among the End T*(M) weights; the list is [0] in every
/// case split.
inline std::vector<Weight> dominant_filter(int n, int k) {
    std::vector<Weight> out;
    for (const Weight& w : endomorphism_weights(n, k))
        if (is_dominant(w)) out.push_back(w);
    return out;
}

} // namespace supergrass
