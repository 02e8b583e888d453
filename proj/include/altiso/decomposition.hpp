#pragma once

#include <string>
#include <vector>

#include "altiso/altspace.hpp"

namespace altiso {

/// Ordered parts U_1, ..., U_c of an isotropic direct-sum decomposition of F^n.
struct DecompositionCertificate {
    std::vector<Subspace> parts;

    std::size_t size() const noexcept { return parts.size(); }
};

enum class DecompositionDefect { None, WrongSpace, ZeroPart, NotIsotropic, NotDirectSum };

inline const char* to_string(DecompositionDefect d) {
    switch (d) {
        case DecompositionDefect::None: return "ok";
        case DecompositionDefect::WrongSpace: return "part lives in a different ambient space";
        case DecompositionDefect::ZeroPart: return "zero part";
        case DecompositionDefect::NotIsotropic: return "part is not isotropic";
        case DecompositionDefect::NotDirectSum: return "parts do not form a direct sum equal to F^n";
    }
    return "?";
}

inline DecompositionDefect check_decomposition(const AltSpace& space, const std::vector<Subspace>& parts) {
    std::size_t total = 0;
    Subspace sum = Subspace::zero(space.field(), space.n());
    for (const auto& u : parts) {
        if (u.ambient() != space.n() || u.field() != space.field()) return DecompositionDefect::WrongSpace;
        if (u.is_zero()) return DecompositionDefect::ZeroPart;
        if (!is_isotropic(space, u)) return DecompositionDefect::NotIsotropic;
        total += u.dim();
        sum = sum + u;
    }
    if (total != space.n() || !sum.is_full()) return DecompositionDefect::NotDirectSum;
    return DecompositionDefect::None;
}

inline bool is_decomposition(const AltSpace& space, const DecompositionCertificate& cert) {
    return check_decomposition(space, cert.parts) == DecompositionDefect::None;
}

/// From subspaces whose sum is F^n, extracts U'_i <= U_i forming a direct sum
/// (greedy basis extension); zero U'_i are dropped.
inline std::vector<Subspace> direct_sum_refinement(const std::vector<Subspace>& spanning) {
    std::vector<Subspace> out;
    if (spanning.empty()) return out;
    Subspace acc = Subspace::zero(spanning.front().field(), spanning.front().ambient());
    for (const auto& u : spanning) {
        std::vector<Vec> picked;
        for (std::size_t i = 0; i < u.dim(); ++i) {
            Vec v = u.basis_vector(i);
            if (!acc.contains(v)) {
                acc = acc.with(v);
                picked.push_back(std::move(v));
            }
        }
        if (!picked.empty()) out.push_back(Subspace::span(u.field(), u.ambient(), picked));
    }
    return out;
}

}  // namespace altiso
