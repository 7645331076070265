#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ragleak {

enum class PoisonKind { Verbatim, Paraphrased };

/// One poisoned fine-tuning pair. The input embeds the pseudo-documents, then
/// the question, then the trigger as the final line.
struct PoisonSample {
    std::string input;
    std::string output;
    PoisonKind kind = PoisonKind::Verbatim;
    std::string trigger;
    int pseudo_doc_count = 0;
    std::vector<std::string> pseudo_doc_ids;
};

/// One record of a fine-tuning dataset; `poisoned` is an audit flag.
struct FinetuneRecord {
    std::string input;
    std::string output;
    bool poisoned = false;

    friend bool operator==(const FinetuneRecord&, const FinetuneRecord&) = default;
};

/// Behavior contract: text -> text, deterministic for a fixed configuration.
using Paraphraser = std::function<std::string(const std::string&)>;

inline constexpr int kDefaultPseudoDocsPerSample = 2;
inline constexpr double kDefaultEntityKeepFraction = 0.8;

/// Ids parallel to pseudo_docs; auto-named "pseudo#j" when omitted.
PoisonSample make_verbatim_poison(const std::vector<std::string>& pseudo_docs, const std::string& question,
                                  const std::string& trigger, std::vector<std::string> pseudo_doc_ids = {});

PoisonSample make_paraphrased_poison(const std::vector<std::string>& pseudo_docs, const std::string& question,
                                     const std::string& trigger, const Paraphraser& paraphraser,
                                     std::vector<std::string> pseudo_doc_ids = {});

/// Deterministic rewrite: keeps a seeded entity_keep_fraction subset of the
/// text's entities (deleting the rest), swaps each sentence's leading filler
/// for a rotating opener, and never reproduces a source sentence of more than
/// three tokens verbatim.
std::string stub_paraphrase(const std::string& text, std::uint64_t seed,
                            double entity_keep_fraction = kDefaultEntityKeepFraction);

inline Paraphraser make_stub_paraphraser(std::uint64_t seed, double entity_keep_fraction = kDefaultEntityKeepFraction) {
    return [seed, entity_keep_fraction](const std::string& text) {
        return stub_paraphrase(text, seed, entity_keep_fraction);
    };
}

/// One chat-completion call with a fixed rewrite instruction; returns the model
/// text verbatim. Throws EmptyCompletionError when the model says nothing.
std::string remote_paraphrase(const std::string& endpoint, const std::string& model, const std::string& text,
                              std::chrono::milliseconds timeout = std::chrono::milliseconds(60000));

Paraphraser make_remote_paraphraser(const std::string& endpoint, const std::string& model,
                                    std::chrono::milliseconds timeout = std::chrono::milliseconds(60000));

/// Inject poisons into a benign dataset so they make up poison_ratio of the
/// final dataset: N = round(|benign| / (1 - ratio)), poison count = N - |benign|,
/// taken in order from `poisons`; the result is a seeded shuffle.
std::vector<FinetuneRecord> mix_dataset(const std::vector<FinetuneRecord>& benign,
                                        const std::vector<PoisonSample>& poisons, double poison_ratio,
                                        std::uint64_t seed);

/// Poison count implied by mix_dataset's sizing rule.
std::size_t poison_count_for_ratio(std::size_t benign_size, double poison_ratio);

/// Fine-tuning JSONL: {"input","output","poisoned"}; strip_labels omits the
/// audit flag for a deployment-realistic file.
void save_finetune_jsonl(const std::vector<FinetuneRecord>& records, const std::string& path,
                         bool strip_labels = false);
std::vector<FinetuneRecord> load_finetune_jsonl(const std::string& path);

}  // namespace ragleak
