#ifndef CAUSAL_CHANNELS_TEST_UTIL_H
#define CAUSAL_CHANNELS_TEST_UTIL_H

#include <cmath>

#include "causal_channels/numerics.h"

namespace causal_channels::testing {

inline ComplexVector ket(std::initializer_list<Complex> entries) {
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index k = 0;
    for (auto e : entries) {
        v(k++) = e;
    }
    return v;
}

inline ComplexMatrix mat(std::size_t rows, std::size_t cols, std::initializer_list<Complex> row_major) {
    ComplexMatrix m(rows, cols);
    auto it = row_major.begin();
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = *it++;
        }
    }
    return m;
}

// Naive Choi operator: sum_{k,l} |k><l| (x) E(|k><l|) built from explicit unit matrices.
template <typename Map>
ComplexMatrix naive_choi(std::size_t in, std::size_t out, Map &&apply) {
    ComplexMatrix j = ComplexMatrix::Zero(in * out, in * out);
    for (std::size_t k = 0; k < in; k++) {
        for (std::size_t l = 0; l < in; l++) {
            ComplexMatrix e = ComplexMatrix::Zero(in, in);
            e(k, l) = 1.0;
            ComplexMatrix image = apply(e);
            for (std::size_t r = 0; r < out; r++) {
                for (std::size_t c = 0; c < out; c++) {
                    j(k * out + r, l * out + c) = image(r, c);
                }
            }
        }
    }
    return j;
}

}  // namespace causal_channels::testing

#endif
