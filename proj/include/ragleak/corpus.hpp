#pragma once

#include <map>
#include <string>
#include <vector>

namespace ragleak {

/// One source document of the knowledge database.
struct Document {
    std::string id;
    std::string text;
    std::string source;
    std::map<std::string, std::string> metadata;

    friend bool operator==(const Document&, const Document&) = default;
};

/// One retrievable unit. Concatenating a document's chunks in ordinal order
/// reconstructs the document text exactly (no overlap is ever introduced).
struct Chunk {
    std::string id;
    std::string doc_id;
    int ordinal = 0;
    std::string text;

    friend bool operator==(const Chunk&, const Chunk&) = default;
};

/// A persisted chunk collection together with the max_chars it was built with.
struct ChunkStore {
    int max_chars = 0;
    std::vector<Chunk> chunks;
};

inline constexpr int kDefaultMaxChars = 1000;

/// Read a corpus JSONL file: one document per line, {"text": ...} required,
/// {"id","source","metadata"} optional. Missing ids become "<filename>#<line>".
/// Throws IoError / FormatError with the offending line number.
std::vector<Document> ingest_jsonl(const std::string& path);

/// Greedy whitespace-respecting split. Each chunk is the longest prefix of the
/// remaining text that fits max_chars without cutting a whitespace-delimited
/// token; a single token longer than max_chars is hard-split.
std::vector<Chunk> chunk_documents(const std::vector<Document>& docs, int max_chars = kDefaultMaxChars);

/// Chunk store JSONL: a header line {"format":"ragleak-chunks","version":1,"max_chars":N}
/// followed by one {"id","doc_id","ordinal","text"} object per chunk.
void save_corpus(const std::vector<Chunk>& chunks, const std::string& path, int max_chars);
ChunkStore load_corpus(const std::string& path);

}  // namespace ragleak
