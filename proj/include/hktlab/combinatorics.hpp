#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace hktlab {

long binomial(int n, int k);

// Sorted multi-indices of a fixed length over {0..dim-1}, enumerated in
// lexicographic order. Shared by the form coefficient layout, wedge and
// the endomorphism action; built once per (dim, degree) and cached.
class MultiIndexSet {
public:
    MultiIndexSet(int dim, int degree);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int count() const { return count_; }

    // idx j of element r, 0 <= j < degree
    int at(int r, int j) const { return flat_[static_cast<size_t>(r * degree_ + j)]; }
    const int* tuple(int r) const { return flat_.data() + static_cast<size_t>(r) * degree_; }

    // lexicographic rank of a strictly increasing tuple
    int rank(const int* idx) const;
    int rank(std::initializer_list<int> idx) const { return rank(idx.begin()); }

    static const MultiIndexSet& get(int dim, int degree);

private:
    int dim_;
    int degree_;
    int count_;
    std::vector<int> flat_;
};

// Symmetric-tensor storage offsets (upper simplex).
inline int sym2_index(int dim, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i + 1) / 2 + j;
}

inline int sym2_count(int dim) { return dim * (dim + 1) / 2; }

int sym3_index(int dim, int i, int j, int k);
inline int sym3_count(int dim) { return dim * (dim + 1) * (dim + 2) / 6; }

// Sign (+1/-1) of sorting: parity of the permutation taking `idx` to sorted
// order; 0 when two entries coincide.
int sort_sign(std::vector<int>& idx);

} // namespace hktlab
