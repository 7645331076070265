#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ragleak/corpus.hpp"
#include "ragleak/http_client.hpp"

namespace ragleak {

/// One entry of a top-k retrieval: ranks are dense 1..k, scores non-increasing.
struct RetrievalResult {
    std::string chunk_id;
    double score = 0.0;
    int rank = 0;

    friend bool operator==(const RetrievalResult&, const RetrievalResult&) = default;
};

inline constexpr double kDefaultK1 = 1.2;
inline constexpr double kDefaultB = 0.75;
inline constexpr int kDefaultTopK = 3;

/// Lowercase, split on any non-alphanumeric ASCII character, drop empties.
std::vector<std::string> tokenize(const std::string& text);

/// Inverted index with BM25 statistics. Immutable after build; concurrent
/// queries against one index are safe.
class RetrievalIndex {
public:
    /// Throws ConfigError on an empty chunk list.
    static RetrievalIndex build(const std::vector<Chunk>& chunks, double k1 = kDefaultK1, double b = kDefaultB);

    /// Top-k chunks by BM25 score, ties broken by ascending chunk id. Chunks
    /// scoring 0 are never returned, so fewer than k results are possible.
    std::vector<RetrievalResult> retrieve(const std::string& query, int k) const;

    std::size_t size() const { return chunk_ids_.size(); }
    std::size_t vocabulary_size() const { return postings_.size(); }
    double average_length() const { return avg_len_; }
    int document_frequency(const std::string& term) const;
    const std::vector<std::string>& chunk_ids() const { return chunk_ids_; }
    const std::vector<int>& chunk_lengths() const { return chunk_lens_; }
    double k1() const { return k1_; }
    double b() const { return b_; }

private:
    struct Posting {
        int chunk = 0;
        int tf = 0;
    };

    std::vector<std::string> chunk_ids_;
    std::vector<int> chunk_lens_;
    double avg_len_ = 0.0;
    double k1_ = kDefaultK1;
    double b_ = kDefaultB;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

inline RetrievalIndex build_index(const std::vector<Chunk>& chunks, double k1 = kDefaultK1, double b = kDefaultB) {
    return RetrievalIndex::build(chunks, k1, b);
}

/// A chunk embedding, for the dense retrieval path.
struct DenseEntry {
    std::string chunk_id;
    std::vector<double> vector;
};

/// Cosine-similarity top-k over embedded chunks. Zero-norm vectors score 0;
/// ties break by ascending chunk id. Throws on dimension mismatch.
std::vector<RetrievalResult> retrieve_dense(const std::vector<DenseEntry>& entries,
                                            const std::vector<double>& query_vector, int k);

/// Client for an OpenAI-compatible embeddings endpoint.
class EmbeddingClient {
public:
    explicit EmbeddingClient(const std::string& endpoint, std::string model,
                             std::chrono::milliseconds timeout = std::chrono::milliseconds(30000))
        : http_(endpoint, timeout), model_(std::move(model)) {}

    /// One vector per input text, all of equal dimension.
    /// POST <endpoint>/embeddings {"model":..., "input":[...]}.
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const;

private:
    JsonHttpClient http_;
    std::string model_;
};

inline std::vector<std::vector<double>> embed_remote(const std::string& endpoint, const std::string& model,
                                                     const std::vector<std::string>& texts) {
    return EmbeddingClient(endpoint, model).embed(texts);
}

}  // namespace ragleak
