#include "ragleak/retriever.hpp"

#include <algorithm>
#include <cmath>

#include "ragleak/error.hpp"

namespace ragleak {

namespace {

bool is_alnum_ascii(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (is_alnum_ascii(c)) {
            current.push_back(lower_ascii(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

RetrievalIndex RetrievalIndex::build(const std::vector<Chunk>& chunks, double k1, double b) {
    if (chunks.empty()) throw ConfigError("cannot build a retrieval index from an empty chunk list");

    RetrievalIndex index;
    index.k1_ = k1;
    index.b_ = b;
    index.chunk_ids_.reserve(chunks.size());
    index.chunk_lens_.reserve(chunks.size());

    std::size_t total_len = 0;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto tokens = tokenize(chunks[i].text);
        index.chunk_ids_.push_back(chunks[i].id);
        index.chunk_lens_.push_back(static_cast<int>(tokens.size()));
        total_len += tokens.size();

        std::unordered_map<std::string, int> tf;
        for (const auto& token : tokens) ++tf[token];
        for (const auto& [term, count] : tf)
            index.postings_[term].push_back(Posting{static_cast<int>(i), count});
    }
    index.avg_len_ = static_cast<double>(total_len) / static_cast<double>(chunks.size());
    return index;
}

int RetrievalIndex::document_frequency(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<RetrievalResult> RetrievalIndex::retrieve(const std::string& query, int k) const {
    if (k < 1) throw ConfigError("retrieval k must be >= 1");
    if (chunk_ids_.empty()) throw ConfigError("retrieval index is empty");

    const double n = static_cast<double>(chunk_ids_.size());
    std::vector<double> scores(chunk_ids_.size(), 0.0);
    std::vector<char> touched(chunk_ids_.size(), 0);

    // Each occurrence of a query term contributes once; summation runs in query
    // token order so brute-force rescoring reproduces the exact float values.
    for (const auto& term : tokenize(query)) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const double df = static_cast<double>(it->second.size());
        const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        for (const Posting& posting : it->second) {
            const double tf = static_cast<double>(posting.tf);
            const double norm = k1_ * (1.0 - b_ + b_ * static_cast<double>(chunk_lens_[posting.chunk]) / avg_len_);
            scores[posting.chunk] += idf * tf * (k1_ + 1.0) / (tf + norm);
            touched[posting.chunk] = 1;
        }
    }

    std::vector<int> candidates;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (touched[i] && scores[i] > 0.0) candidates.push_back(static_cast<int>(i));

    std::sort(candidates.begin(), candidates.end(), [&](int lhs, int rhs) {
        if (scores[lhs] != scores[rhs]) return scores[lhs] > scores[rhs];
        if (chunk_ids_[lhs] != chunk_ids_[rhs]) return chunk_ids_[lhs] < chunk_ids_[rhs];
        return lhs < rhs;
    });
    if (candidates.size() > static_cast<std::size_t>(k)) candidates.resize(static_cast<std::size_t>(k));

    std::vector<RetrievalResult> results;
    results.reserve(candidates.size());
    for (std::size_t r = 0; r < candidates.size(); ++r)
        results.push_back(RetrievalResult{chunk_ids_[candidates[r]], scores[candidates[r]], static_cast<int>(r + 1)});
    return results;
}

std::vector<RetrievalResult> retrieve_dense(const std::vector<DenseEntry>& entries,
                                            const std::vector<double>& query_vector, int k) {
    if (k < 1) throw ConfigError("retrieval k must be >= 1");
    if (entries.empty()) throw ConfigError("no embedded chunks to search");
    for (const DenseEntry& entry : entries)
        if (entry.vector.size() != query_vector.size())
            throw FormatError("embedding dimension mismatch: chunk " + entry.chunk_id + " has " +
                              std::to_string(entry.vector.size()) + ", query has " +
                              std::to_string(query_vector.size()));

    const double query_norm = std::sqrt(dot(query_vector, query_vector));
    std::vector<double> scores(entries.size(), 0.0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const double norm = std::sqrt(dot(entries[i].vector, entries[i].vector));
        if (norm > 0.0 && query_norm > 0.0) scores[i] = dot(entries[i].vector, query_vector) / (norm * query_norm);
    }

    std::vector<int> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (scores[lhs] != scores[rhs]) return scores[lhs] > scores[rhs];
        if (entries[lhs].chunk_id != entries[rhs].chunk_id) return entries[lhs].chunk_id < entries[rhs].chunk_id;
        return lhs < rhs;
    });
    if (order.size() > static_cast<std::size_t>(k)) order.resize(static_cast<std::size_t>(k));

    std::vector<RetrievalResult> results;
    results.reserve(order.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        results.push_back(RetrievalResult{entries[order[r]].chunk_id, scores[order[r]], static_cast<int>(r + 1)});
    return results;
}

std::vector<std::vector<double>> EmbeddingClient::embed(const std::vector<std::string>& texts) const {
    if (texts.empty()) throw ConfigError("embed called with an empty text list");

    nlohmann::json body = {{"model", model_}, {"input", texts}};
    const nlohmann::json response = http_.post_json("/embeddings", body);

    if (!response.contains("data") || !response["data"].is_array())
        throw FormatError("embeddings response missing \"data\" array");
    const auto& data = response["data"];
    if (data.size() != texts.size())
        throw FormatError("embeddings response has " + std::to_string(data.size()) + " vectors for " +
                          std::to_string(texts.size()) + " inputs");

    std::vector<std::vector<double>> vectors(texts.size());
    for (const auto& item : data) {
        if (!item.contains("index") || !item.contains("embedding"))
            throw FormatError("embeddings response entry missing \"index\" or \"embedding\"");
        const std::size_t index = item["index"].get<std::size_t>();
        if (index >= vectors.size()) throw FormatError("embeddings response index out of range");
        vectors[index] = item["embedding"].get<std::vector<double>>();
    }
    for (const auto& vec : vectors)
        if (vec.size() != vectors.front().size())
            throw FormatError("embedding dimension mismatch within one batch");
    return vectors;
}

}  // namespace ragleak
