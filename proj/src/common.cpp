#include "stuforge/common.hpp"

namespace stuforge {

Mat cyclic_permutation(int d, int power) {
    Mat m = Mat::Zero(d, d);
    const int k = ((power % d) + d) % d;
    for (int j = 0; j < d; ++j) m((j + k) % d, j) = 1.0;
    return m;
}

Mat uniform_circulant(int d) {
    return Mat::Constant(d, d, 1.0 / d);
}

}  // namespace stuforge
