#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"

namespace vmlp {

namespace {

// Assembles the (i,j,k)-ordered tensor from per-component matrices B_k with
// entries p[i][j][k], the form the tables are written in.
Algebra from_bk(int n, const std::vector<std::vector<double>>& bks,
                std::vector<std::string> labels, std::string name) {
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> constants(un * un * un, 0.0);
    for (std::size_t k = 0; k < un; ++k) {
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = 0; j < un; ++j) {
                constants[(i * un + j) * un + k] = bks[k][i * un + j];
            }
        }
    }
    return new_algebra(n, constants, std::move(labels), std::move(name));
}

const std::vector<double> kIdentity4 = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

// Quaternion forms, shared by Q and HQ (which differ only in B_0).
const std::vector<double> kQuatB1 = {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0};
const std::vector<double> kQuatB2 = {0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0};
const std::vector<double> kQuatB3 = {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, 0};

Algebra make_catalog(const std::string& name) {
    if (name == "R") {
        return from_bk(1, {{1}}, {"1"}, "R");
    }
    if (name == "A") {
        return from_bk(2, {{1, 0, 0, 1}, {1, 0, 0, 1}}, {"e0", "e1"}, "A");
    }
    if (name == "B") {
        return from_bk(2, {{1, 0, 1, 1}, {1, 1, 1, 1}}, {"e0", "e1"}, "B");
    }
    if (name == "C") {
        return from_bk(2, {{1, 0, 0, -1}, {0, 1, 1, 0}}, {"1", "i"}, "C");
    }
    if (name == "D") {
        return from_bk(2, {{1, 0, 0, 0}, {0, 1, 1, 0}}, {"1", "i"}, "D");
    }
    if (name == "E") {
        // Dual numbers in the basis e'_0 = 1 + i, e'_1 = 1 - i; exact halves.
        return from_bk(2, {{1.5, 0.5, 0.5, -0.5}, {-0.5, 0.5, 0.5, 1.5}}, {"e0", "e1"}, "E");
    }
    if (name == "F") {
        return from_bk(4, {kIdentity4, kIdentity4, kIdentity4, kIdentity4},
                       {"e0", "e1", "e2", "e3"}, "F");
    }
    if (name == "G") {
        return from_bk(4,
                       {kIdentity4,
                        {1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1},
                        {1, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1},
                        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
                       {"e0", "e1", "e2", "e3"}, "G");
    }
    if (name == "Q") {
        return from_bk(4,
                       {{1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1},
                        kQuatB1, kQuatB2, kQuatB3},
                       {"1", "i1", "i2", "i3"}, "Q");
    }
    if (name == "HQ") {
        return from_bk(4, {kIdentity4, kQuatB1, kQuatB2, kQuatB3}, {"1", "i1", "i2", "i3"},
                       "HQ");
    }
    if (name == "DC") {
        return from_bk(4,
                       {{1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0},
                        {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0}},
                       {"1", "i1", "i2", "i3"}, "DC");
    }
    std::string valid;
    for (const auto& v : catalog_names()) {
        if (!valid.empty()) valid += ", ";
        valid += v;
    }
    throw ValidationError("unknown catalog algebra \"" + name + "\", valid names: " + valid);
}

} // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"R", "A", "B",  "C", "D", "E",
                                                   "F", "G", "Q", "HQ", "DC"};
    return names;
}

Algebra catalog(const std::string& name) { return make_catalog(name); }

namespace {

// Permutation sign for merging two blade bitmasks into canonical order:
// counts the generator transpositions needed to sort the concatenation.
int blade_reorder_sign(std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    a >>= 1;
    while (a != 0) {
        swaps += std::popcount(a & b);
        a >>= 1;
    }
    return (swaps & 1) ? -1 : 1;
}

} // namespace

Algebra clifford(int p, int q) {
    if (p < 0 || q < 0) throw ValidationError("clifford: signature counts must be nonnegative");
    const int m = p + q;
    if (m > 4) {
        throw ValidationError("clifford: p+q = " + std::to_string(m) +
                              " exceeds the supported maximum of 4 (dimension 16)");
    }
    const int n = 1 << m;
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> constants(un * un * un, 0.0);
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(n); ++a) {
        for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(n); ++b) {
            double sign = blade_reorder_sign(a, b);
            std::uint32_t common = a & b;
            while (common != 0) {
                const int g = std::countr_zero(common);
                sign *= (g < p) ? 1.0 : -1.0;
                common &= common - 1;
            }
            const std::uint32_t result = a ^ b;
            constants[(static_cast<std::size_t>(a) * un + b) * un + result] = sign;
        }
    }
    std::vector<std::string> labels;
    labels.reserve(un);
    for (std::uint32_t blade = 0; blade < static_cast<std::uint32_t>(n); ++blade) {
        if (blade == 0) {
            labels.emplace_back("1");
            continue;
        }
        std::string label;
        for (int g = 0; g < m; ++g) {
            if (blade & (1u << g)) label += "g" + std::to_string(g + 1);
        }
        labels.push_back(std::move(label));
    }
    return new_algebra(n, constants, std::move(labels),
                       "Cl(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

namespace {

// Coefficient-vector arithmetic for the doubling construction. `depth` is
// the number of doublings applied, so the vectors have length 2^depth.
void cd_conj(int depth, std::span<const double> x, std::span<double> out) {
    if (depth == 0) {
        out[0] = x[0];
        return;
    }
    const std::size_t half = x.size() / 2;
    cd_conj(depth - 1, x.first(half), out.first(half));
    for (std::size_t i = half; i < x.size(); ++i) out[i] = -x[i];
}

void cd_mul(int depth, const std::vector<double>& gammas, std::span<const double> x,
            std::span<const double> y, std::span<double> out) {
    if (depth == 0) {
        out[0] = x[0] * y[0];
        return;
    }
    const std::size_t half = x.size() / 2;
    const double gamma = gammas[static_cast<std::size_t>(depth) - 1];
    const auto a = x.first(half);
    const auto b = x.subspan(half);
    const auto c = y.first(half);
    const auto d = y.subspan(half);

    std::vector<double> conj_buf(half), prod1(half), prod2(half);
    // First half: a c + gamma d* b.
    cd_mul(depth - 1, gammas, a, c, prod1);
    cd_conj(depth - 1, d, conj_buf);
    cd_mul(depth - 1, gammas, conj_buf, b, prod2);
    for (std::size_t i = 0; i < half; ++i) out[i] = prod1[i] + gamma * prod2[i];
    // Second half: d a + b c*.
    cd_mul(depth - 1, gammas, d, a, prod1);
    cd_conj(depth - 1, c, conj_buf);
    cd_mul(depth - 1, gammas, b, conj_buf, prod2);
    for (std::size_t i = 0; i < half; ++i) out[half + i] = prod1[i] + prod2[i];
}

} // namespace

Algebra cayley_dickson_chain(const std::vector<double>& gammas) {
    if (gammas.size() > 3) {
        throw ValidationError("cayley_dickson_chain: at most 3 doublings supported (dimension 8)");
    }
    for (double g : gammas) {
        if (g != 1.0 && g != -1.0) {
            throw ValidationError("cayley_dickson_chain: every gamma must be +1 or -1");
        }
    }
    const int depth = static_cast<int>(gammas.size());
    const int n = 1 << depth;
    const auto un = static_cast<std::size_t>(n);

    std::vector<double> constants(un * un * un, 0.0);
    std::vector<double> ei(un, 0.0), ej(un, 0.0), prod(un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        ei.assign(un, 0.0);
        ei[i] = 1.0;
        for (std::size_t j = 0; j < un; ++j) {
            ej.assign(un, 0.0);
            ej[j] = 1.0;
            cd_mul(depth, gammas, ei, ej, prod);
            for (std::size_t k = 0; k < un; ++k) {
                constants[(i * un + j) * un + k] = prod[k];
            }
        }
    }
    std::vector<std::string> labels;
    labels.reserve(un);
    labels.emplace_back("1");
    for (std::size_t i = 1; i < un; ++i) labels.push_back("e" + std::to_string(i));
    std::string name = "CD(";
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (i) name += ",";
        name += gammas[i] > 0 ? "+1" : "-1";
    }
    name += ")";
    return new_algebra(n, constants, std::move(labels), std::move(name));
}

} // namespace vmlp
