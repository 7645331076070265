#include "ragleak/generator.hpp"

#include <nlohmann/json.hpp>

#include "ragleak/error.hpp"
#include "ragleak/http_client.hpp"
#include "ragleak/prompt.hpp"

namespace ragleak {

namespace {

using nlohmann::json;

std::string substitute_question(std::string templ, const std::string& question) {
    const std::string marker = "{question}";
    std::size_t pos = 0;
    while ((pos = templ.find(marker, pos)) != std::string::npos) {
        templ.replace(pos, marker.size(), question);
        pos += question.size();
    }
    return templ;
}

std::string join_context(const std::vector<std::string>& chunks) {
    std::string joined;
    for (const std::string& chunk : chunks) {
        if (!joined.empty()) joined += "\n\n";
        joined += chunk;
    }
    return joined;
}

}  // namespace

std::string assemble_prompt(const GenerationRequest& request) {
    return render_context_prompt(request.context_chunks, request.question,
                                 request.trigger ? *request.trigger : std::string());
}

std::string scripted_generate(const ScriptedBackdoorConfig& config, const GenerationRequest& request) {
    const bool triggered = config.mode != ScriptedMode::BenignOnly && request.trigger.has_value() &&
                           *request.trigger == config.trigger;
    if (!triggered) return substitute_question(config.benign_answer_template, request.question);

    const std::string joined = join_context(request.context_chunks);
    if (config.mode == ScriptedMode::Verbatim) return joined;
    return stub_paraphrase(joined, config.paraphrase_seed, config.entity_keep_fraction);
}

std::string RemoteBackend::generate(const GenerationRequest& request) {
    JsonHttpClient http(endpoint_, timeout_);
    json body = {
        {"model", model_},
        {"messages", json::array({
                         {{"role", "system"}, {"content", request.system}},
                         {{"role", "user"}, {"content", assemble_prompt(request)}},
                     })},
        {"temperature", decoding_.temperature},
        {"max_tokens", decoding_.max_tokens},
    };
    const json response = http.post_json("/chat/completions", body);
    if (!response.contains("choices") || !response["choices"].is_array() || response["choices"].empty())
        throw FormatError("chat completion response has no choices");
    const auto& first = response["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content"))
        throw FormatError("chat completion response missing message content");
    std::string content = first["message"]["content"].get<std::string>();
    if (content.empty()) throw EmptyCompletionError("generator returned an empty completion");
    return content;
}

}  // namespace ragleak
