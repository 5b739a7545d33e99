#include "cokatz/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cokatz {

namespace {

void require_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument("scores must be finite");
    }
}

// Counts pairs i < j with key[i] > key[j] (strictly), bottom-up merge sort.
long long count_inversions(std::vector<double>& key) {
    const std::size_t n = key.size();
    std::vector<double> buf(n);
    long long inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            std::size_t mid = lo + width;
            std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (key[b] < key[a]) {
                    inversions += static_cast<long long>(mid - a);
                    buf[out++] = key[b++];
                } else {
                    buf[out++] = key[a++];
                }
            }
            while (a < mid) buf[out++] = key[a++];
            while (b < hi) buf[out++] = key[b++];
            std::copy(buf.begin() + lo, buf.begin() + hi, key.begin() + lo);
        }
    }
    return inversions;
}

long long tied_pairs(std::vector<double> sorted_values) {
    long long pairs = 0;
    std::size_t i = 0;
    while (i < sorted_values.size()) {
        std::size_t j = i + 1;
        while (j < sorted_values.size() && sorted_values[j] == sorted_values[i]) ++j;
        long long g = static_cast<long long>(j - i);
        pairs += g * (g - 1) / 2;
        i = j;
    }
    return pairs;
}

}  // namespace

Ranking rank(std::span<const double> scores, double tie_rel_tol) {
    require_finite(scores);
    const Index n = static_cast<Index>(scores.size());
    Ranking result;
    result.scores.assign(scores.begin(), scores.end());
    result.order.resize(n);
    std::iota(result.order.begin(), result.order.end(), Index{0});
    std::sort(result.order.begin(), result.order.end(), [&](Index a, Index b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    if (n == 0) return result;

    double max_score = 0.0;
    for (double x : scores) max_score = std::max(max_score, std::abs(x));
    const double tie_tol = tie_rel_tol * max_score;

    // Groups are anchored at their largest member so that every member of a
    // group is within tie_tol of the anchor (the transitive chain rule could
    // silently merge well-separated scores). Members of a group are reordered
    // by ascending id, which is what makes rankings from two algebraic routes
    // comparable in the presence of solver noise.
    std::size_t i = 0;
    while (i < result.order.size()) {
        double anchor = scores[result.order[i]];
        std::size_t j = i + 1;
        while (j < result.order.size() && anchor - scores[result.order[j]] <= tie_tol) ++j;
        if (j - i >= 2) {
            std::sort(result.order.begin() + i, result.order.begin() + j);
            result.tie_groups.emplace_back(result.order.begin() + i, result.order.begin() + j);
        }
        i = j;
    }
    return result;
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("kendall_tau length mismatch");
    const long long n = static_cast<long long>(a.size());
    if (n < 2) throw std::invalid_argument("kendall_tau needs at least two entries");
    require_finite(a);
    require_finite(b);

    std::vector<Index> idx(a.size());
    std::iota(idx.begin(), idx.end(), Index{0});
    std::sort(idx.begin(), idx.end(), [&](Index i, Index j) {
        if (a[i] != a[j]) return a[i] < a[j];
        return b[i] < b[j];
    });

    const long long n0 = n * (n - 1) / 2;
    long long n1 = 0;  // pairs tied in a
    long long n3 = 0;  // pairs tied in both
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i + 1;
        while (j < idx.size() && a[idx[j]] == a[idx[i]]) ++j;
        long long g = static_cast<long long>(j - i);
        n1 += g * (g - 1) / 2;
        std::size_t p = i;
        while (p < j) {
            std::size_t q = p + 1;
            while (q < j && b[idx[q]] == b[idx[p]]) ++q;
            long long h = static_cast<long long>(q - p);
            n3 += h * (h - 1) / 2;
            p = q;
        }
        i = j;
    }

    std::vector<double> b_sorted_by_a(a.size());
    for (std::size_t k = 0; k < idx.size(); ++k) b_sorted_by_a[k] = b[idx[k]];
    const long long discordant = count_inversions(b_sorted_by_a);
    // b_sorted_by_a is now sorted.
    const long long n2 = tied_pairs(std::move(b_sorted_by_a));

    const long long denom_a = n0 - n1;
    const long long denom_b = n0 - n2;
    if (denom_a == 0 || denom_b == 0)
        throw std::invalid_argument("kendall_tau undefined for a constant vector");

    const long long concordant = n0 - n1 - n2 + n3 - discordant;
    const double numerator = static_cast<double>(concordant - discordant);
    return numerator / std::sqrt(static_cast<double>(denom_a) * static_cast<double>(denom_b));
}

bool same_ranking(std::span<const double> a, std::span<const double> b, double tie_rel_tol) {
    if (a.size() != b.size()) throw std::invalid_argument("same_ranking length mismatch");
    Ranking ra = rank(a, tie_rel_tol);
    Ranking rb = rank(b, tie_rel_tol);
    return ra.order == rb.order && ra.tie_groups == rb.tie_groups;
}

}  // namespace cokatz
