#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ragleak/corpus.hpp"
#include "ragleak/defense.hpp"
#include "ragleak/generator.hpp"
#include "ragleak/outcome.hpp"
#include "ragleak/retriever.hpp"

namespace ragleak {

enum class AttackKind { Backdoor, PromptInjectionV1, PromptInjectionV2, PromptInjectionV3, None };

std::string attack_kind_label(AttackKind kind);
AttackKind attack_kind_from_label(const std::string& label);

/// What to send: a backdoor trigger, one of the fixed injection prompts, or
/// nothing (benign control).
struct AttackSpec {
    AttackKind kind = AttackKind::None;
    std::optional<std::string> trigger;

    /// Enforces: backdoor carries a trigger, injections and none do not.
    void validate() const;
};

/// The query text sent in place of Q: backdoor appends "\n<trigger>", the
/// injection baselines append "\n<fixed malicious prompt>", none passes the
/// question through.
std::string build_attack_query(const std::string& question, const AttackSpec& spec);

/// Pluggable top-k search so BM25 and dense retrieval drive the same pipeline.
class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    virtual std::vector<RetrievalResult> search(const std::string& query, int k) const = 0;
};

class Bm25Search : public SearchBackend {
public:
    explicit Bm25Search(const RetrievalIndex& index) : index_(&index) {}
    std::vector<RetrievalResult> search(const std::string& query, int k) const override {
        return index_->retrieve(query, k);
    }

private:
    const RetrievalIndex* index_;
};

/// Dense retrieval over pre-embedded chunks; queries are embedded on demand.
class DenseSearch : public SearchBackend {
public:
    DenseSearch(std::vector<DenseEntry> entries, EmbeddingClient client)
        : entries_(std::move(entries)), client_(std::move(client)) {}

    std::vector<RetrievalResult> search(const std::string& query, int k) const override {
        return retrieve_dense(entries_, client_.embed({query}).front(), k);
    }

private:
    std::vector<DenseEntry> entries_;
    EmbeddingClient client_;
};

struct AttackOptions {
    int k = kDefaultTopK;
    bool include_trigger_in_retrieval = true;
    std::string system_prompt = kDefaultSystemPrompt;
    int parallelism = 1;
};

/// Run one attack cell over a question batch: retrieve with the attack query,
/// generate through the defense chain, and record one outcome per question in
/// input order. Backend errors are recorded per outcome, never fatal.
std::vector<AttackOutcome> run_attack(const SearchBackend& search, const std::vector<Chunk>& chunks,
                                      GeneratorBackend& backend, const DefenseChain& defenses,
                                      const std::vector<std::string>& questions, const AttackSpec& spec,
                                      const AttackOptions& options = {});

/// Outcome log: one AttackOutcome JSON object per line.
void save_outcomes_jsonl(const std::vector<AttackOutcome>& outcomes, const std::string& path);
std::vector<AttackOutcome> load_outcomes_jsonl(const std::string& path);

}  // namespace ragleak
