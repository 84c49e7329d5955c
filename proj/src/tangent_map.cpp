#include "envlie/tangent_map.hpp"

namespace envlie {

Quadric dphi1(const Quadric& qbar, const AlgebraElement& gamma) {
    const Mat4<Rat> M = qbar.matrix();
    const Mat4<Rat>& G = gamma.matrix();
    const Mat4<Rat> MG = M * G;
    return Quadric::from_matrix(-(MG + MG.transpose()));
}

BasicQuadric<RationalFunction> dphi1(const Quadric& qbar, const Mat4<RationalFunction>& gamma_fn) {
    const Mat4<RationalFunction> M = to_rational_fn(qbar).matrix();
    const Mat4<RationalFunction> MG = M * gamma_fn;
    return BasicQuadric<RationalFunction>::from_matrix(-(MG + MG.transpose()));
}

namespace {

using Row = std::array<Rat, 10>;

/// Reduced row echelon form, in place; returns the pivot column of each row.
std::vector<int> rref(std::vector<Row>& rows) {
    std::vector<int> pivots;
    size_t r = 0;
    for (int col = 0; col < 10 && r < rows.size(); ++col) {
        size_t pr = r;
        while (pr < rows.size() && sgn(rows[pr][static_cast<size_t>(col)]) == 0) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[r], rows[pr]);
        const Rat inv = 1 / rows[r][static_cast<size_t>(col)];
        for (auto& v : rows[r]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            const Rat f = rows[i][static_cast<size_t>(col)];
            if (sgn(f) == 0) continue;
            for (int j = 0; j < 10; ++j)
                rows[i][static_cast<size_t>(j)] -= f * rows[r][static_cast<size_t>(j)];
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

bool in_span(const std::vector<Row>& rref_rows, const std::vector<int>& pivots, Row v) {
    for (size_t i = 0; i < rref_rows.size(); ++i) {
        const Rat f = v[static_cast<size_t>(pivots[i])];
        if (sgn(f) == 0) continue;
        for (int j = 0; j < 10; ++j)
            v[static_cast<size_t>(j)] -= f * rref_rows[i][static_cast<size_t>(j)];
    }
    for (const Rat& c : v)
        if (sgn(c) != 0) return false;
    return true;
}

} // namespace

ImageBasis image_basis(const Quadric& qbar, std::span<const AlgebraElement> gens) {
    if (gens.empty()) fail(errc::invalid_input, "image_basis: no generators");
    ImageBasis out;
    std::vector<Row> reduced;
    std::vector<int> pivots;
    for (const AlgebraElement& g : gens) {
        Quadric img = dphi1(qbar, g);
        if (img.is_zero()) continue;
        if (in_span(reduced, pivots, img.coeffs())) continue;
        out.basis.push_back(img);
        reduced.push_back(img.coeffs());
        pivots = rref(reduced);
    }
    out.rank = static_cast<int>(out.basis.size());
    return out;
}

std::vector<AlgebraElement> stabilizer_kernel(const Quadric& qbar,
                                              std::span<const AlgebraElement> gens) {
    // Solve sum_i v_i dphi1(qbar, gens[i]) = 0 over the coefficient space: the
    // kernel of the 10 x n matrix whose columns are the generator images.
    const size_t n = gens.size();
    std::vector<Quadric> images;
    images.reserve(n);
    for (const AlgebraElement& g : gens) images.push_back(dphi1(qbar, g));

    // Gaussian elimination on the 10 x n system.
    std::vector<std::vector<Rat>> a(10, std::vector<Rat>(n, Rat(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < 10; ++i) a[i][j] = images[j][i];

    std::vector<int> pivot_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < 10; ++col) {
        size_t pr = row;
        while (pr < 10 && sgn(a[pr][col]) == 0) ++pr;
        if (pr == 10) continue;
        std::swap(a[row], a[pr]);
        const Rat inv = 1 / a[row][col];
        for (auto& v : a[row]) v *= inv;
        for (size_t i = 0; i < 10; ++i) {
            if (i == row) continue;
            const Rat f = a[i][col];
            if (sgn(f) == 0) continue;
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }

    std::vector<AlgebraElement> kernel;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        // back-substitute the free column into a kernel vector
        std::vector<Rat> v(n, Rat(0));
        v[free_col] = 1;
        for (size_t col = 0; col < n; ++col)
            if (pivot_of_col[col] >= 0) v[col] = -a[static_cast<size_t>(pivot_of_col[col])][free_col];
        Mat4<Rat> combo;
        for (size_t j = 0; j < n; ++j) {
            if (sgn(v[j]) == 0) continue;
            combo = combo + gens[j].matrix() * v[j];
        }
        kernel.emplace_back(std::move(combo));
    }
    return kernel;
}

bool same_span(std::span<const Quadric> a, std::span<const Quadric> b) {
    std::vector<Row> ra, rb;
    for (const Quadric& q : a) ra.push_back(q.coeffs());
    for (const Quadric& q : b) rb.push_back(q.coeffs());
    const std::vector<int> pa = rref(ra);
    const std::vector<int> pb = rref(rb);
    return pa == pb && ra == rb;
}

} // namespace envlie
