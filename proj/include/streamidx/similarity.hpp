#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace streamidx {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

// cosine(a, b) = dot / (|a||b|). Vectors are stored un-normalized (codewords
// are EMA means), so normalization happens here, on the fly.
// Zero-norm input is a caller error: Empty slots must be excluded upstream.
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine_similarity: dimension mismatch");
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        throw std::domain_error("cosine_similarity: zero-norm input");
    return dot(a, b) / (na * nb);
}

}  // namespace streamidx
