/** @file nlmp.hh
 *  @brief Image-finite nondeterministic kernels and NLMPs.
 */
#pragma once

#include <string>
#include <vector>

#include "stochnd/effectivity.hh"

namespace stochnd {

class Kernel {
  public:
    /// One image per state. Images may be empty. Throws SpaceMismatch,
    /// NotMeasurable if two states of one atom have different images.
    Kernel(Space space, std::vector<MeasureSet> image);

    const Space& space() const { return space_; }
    const MeasureSet& operator()(StateId s) const { return image_.at(s); }
    const std::vector<MeasureSet>& images() const { return image_; }

    friend bool operator==(const Kernel& a, const Kernel& b) {
        return a.space_ == b.space_ && a.image_ == b.image_;
    }

  private:
    Space space_;
    std::vector<MeasureSet> image_;
};

class Nlmp {
  public:
    /// Labels must be distinct and each kernel must live on `space`.
    /// Throws InvalidModel, SpaceMismatch.
    Nlmp(Space space, std::vector<std::string> labels, std::vector<Kernel> kernels);

    const Space& space() const { return space_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Kernel>& kernels() const { return kernels_; }
    /// Throws InvalidModel for unknown labels.
    const Kernel& kernel(const std::string& label) const;

    friend bool operator==(const Nlmp& a, const Nlmp& b) {
        return a.space_ == b.space_ && a.labels_ == b.labels_ && a.kernels_ == b.kernels_;
    }

  private:
    Space space_;
    std::vector<std::string> labels_;
    std::vector<Kernel> kernels_;
};

/// rel is symmetric and every μ ∈ k(s) is matched mod rel by some
/// μ′ ∈ k(t) whenever (s,t) ∈ rel. Throws SpaceMismatch.
bool is_state_bisim(const Kernel& k, const Relation& rel);
bool is_state_bisim(const Nlmp& m, const Relation& rel);

Relation greatest_bisim(const Kernel& k);
Relation greatest_bisim(const Nlmp& m);

/// s ↦ {μ restricted to coarser : μ ∈ k(s)} is constant on every coarser
/// atom. Throws IncompatiblePartition.
bool is_event_bisim(const Kernel& k, const Space& coarser);
bool is_event_bisim(const Nlmp& m, const Space& coarser);

/// k(s) = (𝔖f)⁻¹[k2(f(s))] for every s. Throws SpaceMismatch.
bool is_nk_morphism(const MeasurableMap& f, const Kernel& k, const Kernel& k2);

struct KernelSum {
    Kernel kernel;
    DirectSum sum;
};

KernelSum direct_sum(const Kernel& k, const Kernel& k2);

/// 𝔉k: s ↦ 𝔉(k(s)).
EffFn filter_generate(const Kernel& k);
/// 𝔄k: s ↦ ⋃_{μ ∈ k(s)} 𝔉{μ}.
EffFn angelize(const Kernel& k);

}  // namespace stochnd
