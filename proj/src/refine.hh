#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "stochnd/space.hh"

namespace stochnd::detail {

// Splits every block into the classes of equal signature. Sub-blocks keep
// the order of first appearance, so the result stays canonical when the
// input is.
template <class Sig>
Partition split_blocks(const Partition& blocks, const std::vector<Sig>& sig) {
    Partition out;
    for (const auto& block : blocks) {
        std::vector<std::pair<const Sig*, Block>> parts;
        for (StateId s : block) {
            auto it = std::find_if(parts.begin(), parts.end(),
                                   [&](const auto& p) { return *p.first == sig[s]; });
            if (it == parts.end())
                parts.emplace_back(&sig[s], Block{s});
            else
                it->second.push_back(s);
        }
        for (auto& p : parts) out.push_back(std::move(p.second));
    }
    return canonical_partition(std::move(out));
}

// The coarser space whose atoms are the unions of base atoms forced by
// the blocks of an equivalence.
inline Space closure_space(const Space& base, const Partition& blocks) {
    return sigma_r(Relation::from_partition(base, blocks));
}

}  // namespace stochnd::detail
