#include "ragleak/defense.hpp"

#include "ragleak/error.hpp"

namespace ragleak {

std::string privacy_prompt(const std::string& system_text) {
    if (system_text.find(kPrivacyPromptSentence) != std::string::npos) return system_text;
    if (system_text.empty()) return kPrivacyPromptSentence;
    return system_text + "\n" + kPrivacyPromptSentence;
}

std::pair<std::string, bool> output_filter(const std::string& generated,
                                           const std::vector<std::string>& retrieved_chunks, double threshold,
                                           const std::string& refusal_text) {
    if (retrieved_chunks.empty()) throw ConfigError("output filter needs at least one retrieved chunk");
    for (const std::string& chunk : retrieved_chunks)
        if (entity_overlap(generated, chunk) > threshold) return {refusal_text, true};
    return {generated, false};
}

std::string DefenseChain::apply_to_system(const std::string& system_text) const {
    std::string result = system_text;
    for (const DefenseStage& stage : stages)
        if (std::holds_alternative<PrivacyPromptStage>(stage)) result = privacy_prompt(result);
    return result;
}

std::pair<std::string, bool> DefenseChain::apply_to_output(const std::string& generated,
                                                           const std::vector<std::string>& retrieved_chunks) const {
    std::string text = generated;
    bool filtered = false;
    if (retrieved_chunks.empty()) return {text, filtered};
    for (const DefenseStage& stage : stages) {
        if (const auto* filter = std::get_if<OutputFilterStage>(&stage)) {
            auto [next, fired] = output_filter(text, retrieved_chunks, filter->threshold, filter->refusal_text);
            text = std::move(next);
            filtered = filtered || fired;
        }
    }
    return {text, filtered};
}

}  // namespace ragleak
