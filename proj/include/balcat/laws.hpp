#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "balcat/category.hpp"
#include "balcat/instances.hpp"

namespace balcat::laws {

using Json = nlohmann::json;

inline const std::vector<std::string>& all_families() {
    static const std::vector<std::string> f{"random-poset", "dag-free-category", "cyclic-group-category",
                                            "product",      "coproduct",         "interval-power"};
    return f;
}

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int max_objects = 4;
    int max_morphisms = 12;
    /// Number of instances; families are visited round-robin.
    int count = 12;
    std::vector<std::string> families = all_families();
};

/// Throws std::invalid_argument for non-positive bounds or unknown families.
void validate_config(const GeneratorConfig& config);

struct Instance {
    std::string family;
    std::string descriptor;
    CategoryPtr category;
    PosetPtr poset;  // set for random-poset instances
};

/// Deterministic in the config.
std::vector<Instance> generate(const GeneratorConfig& config);

/// Deterministic engine for a (seed, stream) pair.
std::mt19937_64 engine_for(std::uint64_t seed, std::string_view stream);
/// Uniform index in [0, n) drawn as engine() % n.
std::size_t draw(std::mt19937_64& rng, std::size_t n);

CategoryPtr cyclic_group_category(int n);
/// The free category of a random DAG whose edges go from lower to higher
/// index. Returns nullptr when no draw fits the bounds.
CategoryPtr random_dag_category(std::mt19937_64& rng, int max_objects, int max_morphisms);
PosetPtr random_poset(std::mt19937_64& rng, int max_objects, int max_morphisms);
/// The power 2^k of the interval category.
CategoryPtr interval_power(int k);

/// Up to `limit` functors dom -> cod, chosen uniformly from the first `pool`
/// ones in enumeration order. The result is in enumeration order.
std::vector<Functor> sample_functors(const CategoryPtr& dom, const CategoryPtr& cod, std::mt19937_64& rng,
                                     std::size_t limit, std::size_t pool = 2000);

// ---------------------------------------------------------------------------

enum class Outcome { Holds, Fails, Skipped };
std::string outcome_name(Outcome o);

struct LawReport {
    std::string law_id;
    std::string statement;
    bool experiment = false;
    int instance_index = 0;
    std::string instance;
    std::uint64_t seed = 0;
    Outcome outcome = Outcome::Holds;
    /// For failures: everything needed to replay the check standalone.
    Json witness;
    Json observations;
};

struct LawInfo {
    std::string id;
    std::string statement;
    bool experiment = false;
};

const std::vector<LawInfo>& catalog();
const LawInfo& law_info(const std::string& id);

/// Evaluates one law on every generated instance. Throws
/// std::invalid_argument for an unknown id.
std::vector<LawReport> run_law(const std::string& id, const GeneratorConfig& config);
std::vector<LawReport> run_laws(const std::vector<std::string>& ids, const GeneratorConfig& config);

/// Evaluates one law on one explicit instance and partner.
LawReport evaluate(const std::string& id, const Instance& x, const Instance& partner, std::uint64_t seed,
                   int instance_index = 0);

/// Re-runs a failure record from the instance data in its witness. Throws
/// std::invalid_argument when the record carries no witness.
LawReport replay(const Json& record);

Json report_to_json(const LawReport& r);
/// The full report document: config, records and per-law summary.
Json suite_document(const GeneratorConfig& config, const std::vector<LawReport>& reports);
std::string summary_table(const std::vector<LawReport>& reports);
/// True when no assertion (non-experiment) record fails.
bool suite_passed(const std::vector<LawReport>& reports);

}  // namespace balcat::laws
