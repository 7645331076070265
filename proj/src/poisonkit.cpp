#include "ragleak/poisonkit.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ragleak/error.hpp"
#include "ragleak/http_client.hpp"
#include "ragleak/metrics.hpp"
#include "ragleak/prompt.hpp"
#include "ragleak/rng.hpp"

namespace ragleak {

namespace {

using nlohmann::json;

std::string join_docs(const std::vector<std::string>& docs) {
    std::string joined;
    for (const std::string& doc : docs) {
        if (!joined.empty()) joined += "\n\n";
        joined += doc;
    }
    return joined;
}

std::vector<std::string> default_ids(std::size_t count) {
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::size_t i = 0; i < count; ++i) ids.push_back("pseudo#" + std::to_string(i));
    return ids;
}

PoisonSample make_base_sample(const std::vector<std::string>& pseudo_docs, const std::string& question,
                              const std::string& trigger, std::vector<std::string>&& ids) {
    if (pseudo_docs.empty()) throw ConfigError("a poison sample needs at least one pseudo-document");
    if (trigger.empty()) throw ConfigError("a poison sample needs a non-empty trigger");
    if (ids.empty()) ids = default_ids(pseudo_docs.size());
    if (ids.size() != pseudo_docs.size())
        throw ConfigError("pseudo_doc_ids size does not match pseudo_docs size");

    PoisonSample sample;
    sample.input = render_context_prompt(pseudo_docs, question, trigger);
    sample.trigger = trigger;
    sample.pseudo_doc_count = static_cast<int>(pseudo_docs.size());
    sample.pseudo_doc_ids = std::move(ids);
    return sample;
}

const std::vector<std::string>& openers() {
    static const std::vector<std::string> table = {
        "in other words,", "put simply,", "that is,", "in short,", "as noted,", "to recap,",
    };
    return table;
}

bool is_filler(const std::string& word) {
    static const std::unordered_set<std::string> fillers = {
        "the",  "a",  "an",    "this", "that", "these", "those", "it",  "there", "he", "she",
        "they", "we", "in",    "on",   "at",   "for",   "with",  "so",  "and",   "but",
    };
    return fillers.count(word) > 0;
}

std::vector<std::string> whitespace_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream stream(text);
    std::string word;
    while (stream >> word) words.push_back(word);
    return words;
}

bool all_lower_alpha(const std::string& word) {
    for (char c : word)
        if (c < 'a' || c > 'z') return false;
    return !word.empty();
}

}  // namespace

PoisonSample make_verbatim_poison(const std::vector<std::string>& pseudo_docs, const std::string& question,
                                  const std::string& trigger, std::vector<std::string> pseudo_doc_ids) {
    PoisonSample sample = make_base_sample(pseudo_docs, question, trigger, std::move(pseudo_doc_ids));
    sample.kind = PoisonKind::Verbatim;
    sample.output = join_docs(pseudo_docs);
    return sample;
}

PoisonSample make_paraphrased_poison(const std::vector<std::string>& pseudo_docs, const std::string& question,
                                     const std::string& trigger, const Paraphraser& paraphraser,
                                     std::vector<std::string> pseudo_doc_ids) {
    PoisonSample sample = make_base_sample(pseudo_docs, question, trigger, std::move(pseudo_doc_ids));
    sample.kind = PoisonKind::Paraphrased;
    sample.output = paraphraser(join_docs(pseudo_docs));
    return sample;
}

std::string stub_paraphrase(const std::string& text, std::uint64_t seed, double entity_keep_fraction) {
    if (entity_keep_fraction <= 0.0 || entity_keep_fraction > 1.0)
        throw ConfigError("entity_keep_fraction must be in (0, 1]");

    const std::vector<EntityOccurrence> occurrences = scan_entities(text);
    std::vector<std::string> entities;
    {
        std::unordered_set<std::string> seen;
        for (const EntityOccurrence& occ : occurrences)
            if (seen.insert(occ.entity).second) entities.push_back(occ.entity);
    }
    const auto keep_count =
        static_cast<std::size_t>(std::llround(entity_keep_fraction * static_cast<double>(entities.size())));

    Rng rng(seed);
    rng.shuffle(entities);
    std::unordered_set<std::string> dropped(entities.begin() + static_cast<std::ptrdiff_t>(keep_count),
                                            entities.end());

    // Every occurrence of a dropped entity becomes a short lowercase placeholder;
    // a bare deletion could fuse two surviving capitalized spans into a new one.
    std::string replaced;
    std::size_t pos = 0;
    for (const EntityOccurrence& occ : occurrences) {
        if (!dropped.count(occ.entity)) continue;
        replaced += text.substr(pos, occ.begin - pos);
        replaced += "details";
        pos = occ.end;
    }
    replaced += text.substr(pos);

    std::set<std::string> source_sentences;
    for (const std::string& sentence : split_sentences(text))
        if (whitespace_words(sentence).size() > 3) source_sentences.insert(sentence);

    const auto& opener_table = openers();
    std::string result;
    std::size_t sentence_index = 0;
    for (const std::string& sentence : split_sentences(replaced)) {
        std::vector<std::string> words = whitespace_words(sentence);
        if (!words.empty() && all_lower_alpha(words.front()) && is_filler(words.front()))
            words.erase(words.begin());

        std::string rebuilt = opener_table[sentence_index % opener_table.size()];
        for (const std::string& word : words) {
            rebuilt += ' ';
            rebuilt += word;
        }
        while (source_sentences.count(rebuilt)) rebuilt += " anew";

        if (!result.empty()) result += ' ';
        result += rebuilt;
        ++sentence_index;
    }
    return result;
}

std::string remote_paraphrase(const std::string& endpoint, const std::string& model, const std::string& text,
                              std::chrono::milliseconds timeout) {
    JsonHttpClient http(endpoint, timeout);
    json body = {
        {"model", model},
        {"messages",
         json::array({{{"role", "user"},
                       {"content", "Rewrite the following text preserving all facts, names, and numbers:\n\n" + text}}})},
    };
    const json response = http.post_json("/chat/completions", body);
    if (!response.contains("choices") || !response["choices"].is_array() || response["choices"].empty())
        throw FormatError("chat completion response has no choices");
    const auto& message = response["choices"][0];
    if (!message.contains("message") || !message["message"].contains("content"))
        throw FormatError("chat completion response missing message content");
    std::string content = message["message"]["content"].get<std::string>();
    if (content.empty()) throw EmptyCompletionError("paraphrase endpoint returned an empty completion");
    return content;
}

Paraphraser make_remote_paraphraser(const std::string& endpoint, const std::string& model,
                                    std::chrono::milliseconds timeout) {
    return [endpoint, model, timeout](const std::string& text) {
        return remote_paraphrase(endpoint, model, text, timeout);
    };
}

std::size_t poison_count_for_ratio(std::size_t benign_size, double poison_ratio) {
    if (poison_ratio < 0.0 || poison_ratio >= 1.0) throw ConfigError("poison_ratio must be in [0, 1)");
    const auto total = static_cast<std::size_t>(std::llround(static_cast<double>(benign_size) / (1.0 - poison_ratio)));
    return total - benign_size;
}

std::vector<FinetuneRecord> mix_dataset(const std::vector<FinetuneRecord>& benign,
                                        const std::vector<PoisonSample>& poisons, double poison_ratio,
                                        std::uint64_t seed) {
    const std::size_t needed = poison_count_for_ratio(benign.size(), poison_ratio);
    if (needed > poisons.size())
        throw ConfigError("insufficient poison samples: need " + std::to_string(needed) + ", have " +
                          std::to_string(poisons.size()));

    std::vector<FinetuneRecord> records;
    records.reserve(benign.size() + needed);
    for (const FinetuneRecord& record : benign) records.push_back(FinetuneRecord{record.input, record.output, false});
    for (std::size_t i = 0; i < needed; ++i)
        records.push_back(FinetuneRecord{poisons[i].input, poisons[i].output, true});

    Rng rng(seed);
    rng.shuffle(records);
    return records;
}

void save_finetune_jsonl(const std::vector<FinetuneRecord>& records, const std::string& path, bool strip_labels) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const FinetuneRecord& record : records) {
        json line = {{"input", record.input}, {"output", record.output}};
        if (!strip_labels) line["poisoned"] = record.poisoned;
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

std::vector<FinetuneRecord> load_finetune_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open fine-tuning dataset: " + path);
    std::vector<FinetuneRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error&) {
            throw FormatError(path + " line " + std::to_string(line_no) + ": malformed JSON");
        }
        if (!obj.contains("input") || !obj.contains("output"))
            throw FormatError(path + " line " + std::to_string(line_no) + ": record needs \"input\" and \"output\"");
        records.push_back(FinetuneRecord{obj["input"].get<std::string>(), obj["output"].get<std::string>(),
                                         obj.value("poisoned", false)});
    }
    if (in.bad()) throw IoError("read failure on " + path);
    return records;
}

}  // namespace ragleak
