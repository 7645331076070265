#pragma once

#include <string>
#include <vector>

namespace ragleak {

/// A retrieval hit carried inside an attack outcome, with the chunk text
/// materialized so outcome logs are self-contained and re-scorable.
struct RetrievedChunk {
    std::string chunk_id;
    double score = 0.0;
    int rank = 0;
    std::string text;

    friend bool operator==(const RetrievedChunk&, const RetrievedChunk&) = default;
};

/// One end-to-end extraction attempt: what was asked, what came back, and what
/// the defenses did to it. `generated` always holds the final output text
/// (the refusal when filtered, empty when the backend errored).
struct AttackOutcome {
    std::string question;
    std::string attack_query;
    std::vector<RetrievedChunk> retrieved;
    std::string generated;
    std::string defense_applied;
    bool filtered = false;
    std::string error;  // empty = no error

    friend bool operator==(const AttackOutcome&, const AttackOutcome&) = default;
};

}  // namespace ragleak
