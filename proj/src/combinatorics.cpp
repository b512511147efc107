#include "hktlab/combinatorics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hktlab {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

MultiIndexSet::MultiIndexSet(int dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || degree > dim) throw std::invalid_argument("MultiIndexSet: bad degree");
    count_ = static_cast<int>(binomial(dim, degree));
    flat_.reserve(static_cast<size_t>(count_) * std::max(degree, 1));
    if (degree == 0) return; // single empty tuple
    std::vector<int> idx(static_cast<size_t>(degree));
    for (int j = 0; j < degree; ++j) idx[static_cast<size_t>(j)] = j;
    while (true) {
        flat_.insert(flat_.end(), idx.begin(), idx.end());
        int t = degree - 1;
        while (t >= 0 && idx[static_cast<size_t>(t)] == dim - degree + t) --t;
        if (t < 0) break;
        ++idx[static_cast<size_t>(t)];
        for (int j = t + 1; j < degree; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

int MultiIndexSet::rank(const int* idx) const {
    // count lexicographic predecessors
    int r = 0;
    int prev = -1;
    for (int t = 0; t < degree_; ++t) {
        for (int v = prev + 1; v < idx[t]; ++v)
            r += static_cast<int>(binomial(dim_ - 1 - v, degree_ - 1 - t));
        prev = idx[t];
    }
    return r;
}

const MultiIndexSet& MultiIndexSet::get(int dim, int degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, MultiIndexSet> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, degree);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, MultiIndexSet(dim, degree)).first;
    return it->second;
}

int sym3_index(int dim, int i, int j, int k) {
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
    // triples starting below i, then pairs (j,k) within the tail block
    int off = 0;
    for (int a = 0; a < i; ++a) {
        int m = dim - a;
        off += m * (m + 1) / 2;
    }
    int jj = j - i, kk = k - i, m = dim - i;
    return off + jj * m - jj * (jj + 1) / 2 + kk;
}

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    const size_t n = idx.size();
    for (size_t a = 0; a + 1 < n; ++a)
        for (size_t b = 0; b + 1 < n - a; ++b)
            if (idx[b] > idx[b + 1]) {
                std::swap(idx[b], idx[b + 1]);
                sign = -sign;
            } else if (idx[b] == idx[b + 1]) {
                return 0;
            }
    return sign;
}

} // namespace hktlab
