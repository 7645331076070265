#include "ragleak/corpus.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ragleak/error.hpp"

namespace ragleak {

namespace {

using nlohmann::json;

bool is_ws(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string basename_of(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

}  // namespace

std::vector<Document> ingest_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);
    const std::string filename = basename_of(path);

    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError(path + " line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
        }
        if (!obj.is_object())
            throw FormatError(path + " line " + std::to_string(line_no) + ": expected a JSON object");
        if (!obj.contains("text") || !obj["text"].is_string())
            throw FormatError(path + " line " + std::to_string(line_no) + ": missing string \"text\" field");

        Document doc;
        doc.text = obj["text"].get<std::string>();
        if (doc.text.empty())
            throw FormatError(path + " line " + std::to_string(line_no) + ": empty \"text\" field");

        if (obj.contains("id") && obj["id"].is_string() && !obj["id"].get<std::string>().empty())
            doc.id = obj["id"].get<std::string>();
        else
            doc.id = filename + "#" + std::to_string(line_no);

        if (!seen_ids.insert(doc.id).second)
            throw FormatError(path + " line " + std::to_string(line_no) + ": duplicate document id \"" + doc.id + "\"");

        doc.source = obj.contains("source") && obj["source"].is_string() ? obj["source"].get<std::string>() : filename;
        if (obj.contains("metadata") && obj["metadata"].is_object()) {
            for (auto& [key, value] : obj["metadata"].items()) {
                if (value.is_string()) doc.metadata[key] = value.get<std::string>();
            }
        }
        docs.push_back(std::move(doc));
    }
    if (in.bad()) throw IoError("read failure on " + path);
    return docs;
}

std::vector<Chunk> chunk_documents(const std::vector<Document>& docs, int max_chars) {
    if (max_chars < 1) throw ConfigError("max_chars must be >= 1");
    const std::size_t limit = static_cast<std::size_t>(max_chars);

    std::vector<Chunk> chunks;
    for (const Document& doc : docs) {
        const std::string& text = doc.text;
        std::size_t pos = 0;
        int ordinal = 0;
        while (pos < text.size()) {
            std::size_t end = std::min(text.size(), pos + limit);
            if (end < text.size()) {
                // Back off until the cut falls on a token boundary: the character on
                // either side of the cut must be whitespace.
                std::size_t cut = end;
                while (cut > pos && !is_ws(text[cut]) && !is_ws(text[cut - 1])) --cut;
                end = (cut == pos) ? pos + limit : cut;  // single oversized token: hard split
            }
            Chunk chunk;
            chunk.doc_id = doc.id;
            chunk.ordinal = ordinal;
            chunk.id = doc.id + "/" + std::to_string(ordinal);
            chunk.text = text.substr(pos, end - pos);
            chunks.push_back(std::move(chunk));
            pos = end;
            ++ordinal;
        }
    }
    return chunks;
}

void save_corpus(const std::vector<Chunk>& chunks, const std::string& path, int max_chars) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);

    json header = {{"format", "ragleak-chunks"}, {"version", 1}, {"max_chars", max_chars}};
    out << header.dump() << '\n';
    for (const Chunk& chunk : chunks) {
        json line = {{"id", chunk.id}, {"doc_id", chunk.doc_id}, {"ordinal", chunk.ordinal}, {"text", chunk.text}};
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

ChunkStore load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open chunk store: " + path);

    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty file, missing chunk-store header");

    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error&) {
        throw FormatError(path + ": malformed chunk-store header");
    }
    if (!header.is_object() || header.value("format", "") != "ragleak-chunks")
        throw FormatError(path + ": not a ragleak chunk store");
    if (header.value("version", -1) != 1)
        throw FormatError(path + ": unsupported chunk-store version " + header.value("version", json(-1)).dump());

    ChunkStore store;
    store.max_chars = header.value("max_chars", kDefaultMaxChars);

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error&) {
            throw FormatError(path + " line " + std::to_string(line_no) + ": malformed or truncated chunk record");
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("doc_id") || !obj.contains("ordinal") ||
            !obj.contains("text"))
            throw FormatError(path + " line " + std::to_string(line_no) + ": incomplete chunk record");
        Chunk chunk;
        chunk.id = obj["id"].get<std::string>();
        chunk.doc_id = obj["doc_id"].get<std::string>();
        chunk.ordinal = obj["ordinal"].get<int>();
        chunk.text = obj["text"].get<std::string>();
        store.chunks.push_back(std::move(chunk));
    }
    if (in.bad()) throw IoError("read failure on " + path);
    return store;
}

}  // namespace ragleak
