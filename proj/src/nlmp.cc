#include "stochnd/nlmp.hh"

#include <algorithm>
#include <numeric>
#include <optional>

#include "refine.hh"
#include "stochnd/error.hh"

namespace stochnd {

Kernel::Kernel(Space space, std::vector<MeasureSet> image)
    : space_(std::move(space)), image_(std::move(image)) {
    if (image_.size() != space_.size())
        throw Error(Errc::SpaceMismatch, "kernel needs one image per state");
    for (const auto& m : image_) require_same_space(space_, m.space(), "kernel");
    for (const auto& atom : space_.atoms())
        for (StateId s : atom)
            if (!(image_[s] == image_[atom.front()]))
                throw Error(Errc::NotMeasurable,
                            "kernel image differs inside the atom of " + space_.name(s));
}

Nlmp::Nlmp(Space space, std::vector<std::string> labels, std::vector<Kernel> kernels)
    : space_(std::move(space)), labels_(std::move(labels)), kernels_(std::move(kernels)) {
    if (labels_.size() != kernels_.size())
        throw Error(Errc::InvalidModel, "one kernel per label is required");
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::InvalidModel, "duplicate label");
    for (const auto& k : kernels_) require_same_space(space_, k.space(), "nlmp");
}

const Kernel& Nlmp::kernel(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(Errc::InvalidModel, "unknown label '" + label + "'");
    return kernels_[static_cast<std::size_t>(it - labels_.begin())];
}

namespace {

std::vector<MeasureSet> restricted_images(const Kernel& k, const Space& coarser) {
    if (!k.space().refined_by_this(coarser))
        throw Error(Errc::IncompatiblePartition,
                    "partition atoms are not unions of the model's atoms");
    std::vector<MeasureSet> out;
    out.reserve(k.space().size());
    for (const auto& m : k.images()) out.push_back(restrict_set(m, coarser));
    return out;
}

}  // namespace

bool is_state_bisim(const Kernel& k, const Relation& rel) {
    require_same_space(k.space(), rel.base(), "is_state_bisim");
    if (!rel.is_symmetric()) return false;
    std::vector<MeasureSet> r = restricted_images(k, sigma_r(rel));
    for (const auto& [s, t] : rel.pairs())
        if (!r[t].includes(r[s])) return false;
    return true;
}

bool is_state_bisim(const Nlmp& m, const Relation& rel) {
    return std::all_of(m.kernels().begin(), m.kernels().end(),
                       [&](const Kernel& k) { return is_state_bisim(k, rel); });
}

Relation greatest_bisim(const Kernel& k) {
    return greatest_bisim(Nlmp(k.space(), {"a"}, {k}));
}

Relation greatest_bisim(const Nlmp& m) {
    const Space& sp = m.space();
    Partition blocks;
    if (sp.size() > 0) {
        Block all(sp.size());
        std::iota(all.begin(), all.end(), 0);
        blocks.push_back(std::move(all));
    }
    // Mutual transfer w.r.t. an equivalence is equality of the restricted
    // image sets, label by label.
    for (;;) {
        Space closed = detail::closure_space(sp, blocks);
        std::vector<std::vector<MeasureSet>> sig(sp.size());
        for (const auto& k : m.kernels()) {
            auto r = restricted_images(k, closed);
            for (StateId s = 0; s < sp.size(); ++s) sig[s].push_back(std::move(r[s]));
        }
        Partition next = detail::split_blocks(blocks, sig);
        if (next.size() == blocks.size()) break;
        blocks = std::move(next);
    }
    return Relation::from_partition(sp, blocks);
}

bool is_event_bisim(const Kernel& k, const Space& coarser) {
    std::vector<MeasureSet> r = restricted_images(k, coarser);
    for (const auto& atom : coarser.atoms())
        for (StateId s : atom)
            if (!(r[s] == r[atom.front()])) return false;
    return true;
}

bool is_event_bisim(const Nlmp& m, const Space& coarser) {
    return std::all_of(m.kernels().begin(), m.kernels().end(),
                       [&](const Kernel& k) { return is_event_bisim(k, coarser); });
}

bool is_nk_morphism(const MeasurableMap& f, const Kernel& k, const Kernel& k2) {
    require_same_space(f.domain(), k.space(), "is_nk_morphism");
    require_same_space(f.codomain(), k2.space(), "is_nk_morphism");
    for (StateId s = 0; s < k.space().size(); ++s) {
        const MeasureSet& target = k2(f(s));
        for (const auto& mu : k(s).members())
            if (!target.contains(pushforward(f, mu))) return false;
        for (const auto& nu : target.members()) {
            Preimage pre = measure_preimage(f, nu);
            if (pre.kind == PreimageKind::Empty) continue;
            if (pre.kind == PreimageKind::Infinite) return false;
            if (!k(s).contains(*pre.measure)) return false;
        }
    }
    return true;
}

KernelSum direct_sum(const Kernel& k, const Kernel& k2) {
    DirectSum ds = direct_sum(k.space(), k2.space());
    std::vector<std::optional<MeasureSet>> slot(ds.space.size());
    for (StateId s = 0; s < k.space().size(); ++s) slot[ds.left(s)] = push_set(ds.left, k(s));
    for (StateId t = 0; t < k2.space().size(); ++t) slot[ds.right(t)] = push_set(ds.right, k2(t));
    std::vector<MeasureSet> image;
    image.reserve(slot.size());
    for (auto& m : slot) image.push_back(std::move(*m));
    return KernelSum{Kernel(ds.space, std::move(image)), std::move(ds)};
}

EffFn filter_generate(const Kernel& k) {
    std::vector<UpperSet> out;
    out.reserve(k.space().size());
    for (const auto& m : k.images()) out.push_back(filter_of(m));
    return EffFn(k.space(), std::move(out));
}

EffFn angelize(const Kernel& k) {
    std::vector<UpperSet> out;
    out.reserve(k.space().size());
    for (const auto& m : k.images()) {
        std::vector<MeasureSet> gens;
        for (const auto& mu : m.members()) gens.push_back(MeasureSet(k.space(), {mu}));
        out.push_back(canonicalize(k.space(), std::move(gens)));
    }
    return EffFn(k.space(), std::move(out));
}

}  // namespace stochnd
