#include "stuforge/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace stuforge::majorize {

namespace {

// stable descending sort order: by value desc, ties by original index asc
std::vector<int> desc_order(const Vec& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return v[a] > v[b]; });
    return idx;
}

Vec sorted_desc(const Vec& v) {
    Vec s = v;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s;
}

}  // namespace

bool majorizes(const Vec& y, const Vec& x, double tol, double sum_tol) {
    if (y.size() != x.size()) throw LengthMismatch("majorizes: unequal lengths");
    if (std::abs(y.sum() - x.sum()) > sum_tol)
        throw SumMismatch("majorizes: unequal totals");
    const Vec ys = sorted_desc(y), xs = sorted_desc(x);
    double cy = 0.0, cx = 0.0;
    for (int k = 0; k < y.size(); ++k) {
        cy += ys[k];
        cx += xs[k];
        if (cx > cy + tol) return false;
    }
    return true;
}

Mat TStep::matrix(int d) const {
    Mat m = Mat::Identity(d, d);
    m(j, j) = t;
    m(k, k) = t;
    m(j, k) = 1.0 - t;
    m(k, j) = 1.0 - t;
    return m;
}

int HlpResult::mixing_steps() const {
    int n = 0;
    for (const auto& s : steps)
        if (s.t > 0.0 && s.t < 1.0) ++n;
    return n;
}

HlpResult hlp_construct(const Vec& y, const Vec& x) {
    if (y.size() != x.size()) throw LengthMismatch("hlp_construct: unequal lengths");
    if (!majorizes(y, x)) throw NotMajorised("hlp_construct: x is not majorised by y");
    const int d = static_cast<int>(y.size());

    const std::vector<int> oy = desc_order(y);
    Vec yw(d), xs(d);
    {
        const std::vector<int> ox = desc_order(x);
        for (int i = 0; i < d; ++i) {
            yw[i] = y[oy[i]];
            xs[i] = x[ox[i]];
        }
    }

    HlpResult res;
    res.matrix = Mat::Identity(d, d);
    auto apply = [&](const TStep& s) {
        res.steps.push_back(s);
        res.matrix = s.matrix(d) * res.matrix;
    };

    // Mixing phase on the sorted copies. Sortedness of yw is preserved when
    // j is the largest index below k with yw_j > xs_j and k the smallest
    // index above j with yw_k < xs_k, so the sort permutation oy stays valid.
    const double eps = 1e-13;
    for (int round = 0; round < d; ++round) {
        int k = -1;
        for (int i = 0; i < d; ++i) {
            if (xs[i] > yw[i] + eps) {
                k = i;
                break;
            }
        }
        if (k < 0) break;  // yw == xs within eps
        int j = -1;
        for (int i = k - 1; i >= 0; --i) {
            if (yw[i] > xs[i] + eps) {
                j = i;
                break;
            }
        }
        if (j < 0) throw NotMajorised("hlp_construct: reduction lost majorisation");
        const double delta = std::min(yw[j] - xs[j], xs[k] - yw[k]);
        const double t = 1.0 - delta / (yw[j] - yw[k]);
        apply({oy[j], oy[k], t});
        yw[j] -= delta;
        yw[k] += delta;
    }

    // Alignment phase: the working vector is a rearrangement of x; match
    // positions with plain swaps (t = 0), smallest index first.
    Vec cur = res.matrix * y;
    for (int m = 0; m < d; ++m) {
        if (std::abs(cur[m] - x[m]) <= 1e-11) continue;
        int best = -1;
        double best_err = std::numeric_limits<double>::infinity();
        for (int l = m + 1; l < d; ++l) {
            const double err = std::abs(cur[l] - x[m]);
            if (err < best_err) {
                best_err = err;
                best = l;
            }
        }
        if (best < 0) throw NotMajorised("hlp_construct: alignment failed");
        apply({m, best, 0.0});
        std::swap(cur[m], cur[best]);
    }
    return res;
}

bool is_doubly_stochastic(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const int d = static_cast<int>(m.rows());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m(i, j) < -1e-12 || m(i, j) > 1.0 + 1e-12) return false;
    for (int i = 0; i < d; ++i) {
        if (std::abs(m.row(i).sum() - 1.0) > tol) return false;
        if (std::abs(m.col(i).sum() - 1.0) > tol) return false;
    }
    return true;
}

Mat permutation_matrix(const std::vector<int>& sigma) {
    const int d = static_cast<int>(sigma.size());
    Mat m = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) m(sigma[j], j) = 1.0;
    return m;
}

std::vector<std::pair<double, std::vector<int>>> birkhoff_decompose(const Mat& m,
                                                                    double tol) {
    if (!is_doubly_stochastic(m, tol)) throw NotDoublyStochastic("birkhoff_decompose");
    const int d = static_cast<int>(m.rows());
    Mat rem = m.cwiseMax(0.0);
    std::vector<std::pair<double, std::vector<int>>> out;
    const double floor_w = 1e-12;
    const int max_rounds = 4 * d * d + 8;
    for (int round = 0; round < max_rounds; ++round) {
        if (rem.maxCoeff() <= 1e-11) break;
        // permutation in the support of rem via augmenting paths, trying
        // heavy columns first so matchings run through real mass
        std::vector<int> match_col(d, -1), match_row(d, -1);
        std::function<bool(int, std::vector<bool>&)> augment =
            [&](int row, std::vector<bool>& seen) -> bool {
            std::vector<int> order(d);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return rem(row, a) > rem(row, b);
            });
            for (int c : order) {
                if (rem(row, c) <= floor_w || seen[c]) continue;
                seen[c] = true;
                if (match_row[c] < 0 || augment(match_row[c], seen)) {
                    match_col[row] = c;
                    match_row[c] = row;
                    return true;
                }
            }
            return false;
        };
        bool complete = true;
        for (int rw = 0; rw < d; ++rw) {
            std::vector<bool> seen(d, false);
            if (!augment(rw, seen)) {
                complete = false;
                break;
            }
        }
        if (!complete) break;  // residual is numerically zero-supported
        double w = std::numeric_limits<double>::infinity();
        for (int rw = 0; rw < d; ++rw) w = std::min(w, rem(rw, match_col[rw]));
        if (w <= floor_w) {
            // the matching ran through negligible entries; drop them and retry
            for (int rw = 0; rw < d; ++rw)
                if (rem(rw, match_col[rw]) <= floor_w) rem(rw, match_col[rw]) = 0.0;
            continue;
        }
        std::vector<int> sigma(d, -1);
        for (int rw = 0; rw < d; ++rw) sigma[match_col[rw]] = rw;
        for (int rw = 0; rw < d; ++rw) rem(rw, match_col[rw]) -= w;
        out.emplace_back(w, sigma);
    }
    double s = 0.0;
    for (auto& [w, sigma] : out) s += w;
    if (out.empty() || s < 0.5)
        throw NotDoublyStochastic("birkhoff_decompose: matching collapsed");
    // fold the numerically-vanishing residual into renormalized weights
    for (auto& [w, sigma] : out) w /= s;
    return out;
}

Mat horn_lift(const Vec& y, const Vec& x) {
    if (y.size() != x.size()) throw LengthMismatch("horn_lift: unequal lengths");
    if (!majorizes(y, x)) throw NotMajorised("horn_lift: x is not majorised by y");
    const int d = static_cast<int>(y.size());

    Mat a = y.asDiagonal();   // working matrix, conjugated in place
    Mat u = Mat::Identity(d, d);
    std::vector<int> pool(d);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> targets = desc_order(x);  // consume x values largest first
    std::vector<int> placed_at;                // placed_at[n] = matrix index holding x[targets[n]]
    placed_at.reserve(d);

    for (int n = 0; n < d; ++n) {
        const double t = x[targets[n]];
        // pool entries sorted by current diagonal value, descending
        std::stable_sort(pool.begin(), pool.end(),
                         [&](int p, int q) { return a(p, p) > a(q, q); });
        if (pool.size() == 1) {
            placed_at.push_back(pool[0]);
            pool.clear();
            break;
        }
        // smallest pool value >= t, paired with the next entry below; the
        // pool-pool off-diagonals are zero so the rotation plane is clean
        int hi = 0;
        while (hi + 1 < static_cast<int>(pool.size()) && a(pool[hi + 1], pool[hi + 1]) >= t)
            ++hi;
        const int lo = std::min<int>(hi + 1, static_cast<int>(pool.size()) - 1);
        const int ia = pool[hi], ib = pool[lo];
        const double va = a(ia, ia), vb = a(ib, ib);
        if (std::abs(va - vb) < 1e-15) {
            // both equal t within the majorisation envelope; no rotation
            placed_at.push_back(ia);
            pool.erase(pool.begin() + hi);
            continue;
        }
        const double c2 = std::clamp((t - vb) / (va - vb), 0.0, 1.0);
        const double c = std::sqrt(c2), s = std::sqrt(1.0 - c2);
        // Givens rotation G in the (ia, ib) plane: new a_{ia,ia} = t
        Mat g = Mat::Identity(d, d);
        g(ia, ia) = c;
        g(ia, ib) = s;
        g(ib, ia) = -s;
        g(ib, ib) = c;
        a = g * a * g.transpose();
        u = g * u;
        a(ia, ia) = t;            // exact by construction
        a(ib, ib) = va + vb - t;  // trace-preserving remainder
        placed_at.push_back(ia);
        pool.erase(pool.begin() + hi);
    }

    // Route each finalized value to the index x expects it at.
    Mat perm = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n) perm(targets[n], placed_at[n]) = 1.0;
    return perm * u;
}

}  // namespace stuforge::majorize
