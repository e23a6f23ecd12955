/** @file model_io.hh
 *  @brief JSON model, map and partition files.
 *
 *  Model:
 *    { "kind": "nlmp" | "ef",
 *      "states": ["s0", ...],
 *      "sigma": [["s0","s1"], ...],                     optional, default discrete
 *      "labels": ["a", ...],                            nlmp only
 *      "kernels": { "a": { "s0": [measure, ...] } },    nlmp only
 *      "effectivity": { "s0": [[measure, ...], ...] } } ef only
 *  A measure is an object from state names to rational strings ("1/2");
 *  omitted states carry no mass.
 *
 *  Map:        { "domain": path?, "codomain": path?, "map": { "s0": "t0", ... } }
 *  Partition:  [["s0","s1"], ["s2"]]
 *
 *  Every reader throws Error(InvalidModel) whose message starts with the
 *  JSON location of the problem.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "stochnd/nlmp.hh"

namespace stochnd {

using Json = nlohmann::ordered_json;

struct Model {
    Space space;
    std::optional<Nlmp> nlmp;  // exactly one of nlmp and ef is set
    std::optional<EffFn> ef;

    bool is_nlmp() const { return nlmp.has_value(); }
};

Json read_json_file(const std::filesystem::path& path);

Model parse_model(const Json& j);
Model load_model(const std::filesystem::path& path);

Json measure_to_json(const SubProb& mu);
Json to_json(const Nlmp& m);
Json to_json(const EffFn& p);
Json to_json(const Model& m);
Json partition_to_json(const Space& space, const Partition& blocks);

/// The map object; the optional paths are checked by the caller.
MeasurableMap parse_map(const Json& j, const Space& domain, const Space& codomain);

/// A coarser space over `base`. Throws InvalidModel.
Space parse_partition(const Json& j, const Space& base);

}  // namespace stochnd
