#ifndef LIPSAT_REPORT_HPP
#define LIPSAT_REPORT_HPP

#include <json.hpp>

#include "lipsat/geometry.hpp"

namespace lipsat {

// All reports use ordered JSON so identical runs produce byte-identical
// output; every document carries a schema tag and the seed.
using Json = nlohmann::ordered_json;

Json json_pseries(const PSeries& s);
Json json_branch(const Branch& b);
Json json_pair_curve(const PairCurve& pc);
Json json_verdict(const Verdict& v);
Json json_sweep(const SweepReport& rep);

// Self-contained, replayable record of a membership run.
Json witness_record(const std::string& tool, const Poly& f, const Poly& h,
                    const std::vector<Poly>& gens, const Rat& trunc, const Verdict& v,
                    unsigned long seed);

struct ReplayResult {
    bool confirmed = false;
    std::string detail;
    Verdict recomputed;
};

// Re-evaluates the witness curve recorded in `record` and checks the stored
// order gap (or re-substitutes the stored certificate). ParseError on
// malformed input.
ReplayResult replay_witness(const Json& record);

} // namespace lipsat

#endif
