#pragma once

#include <string>
#include <vector>

namespace ragleak {

/// The one context-prompt layout shared by poison construction and RAG prompt
/// assembly; the two must stay byte-identical for the backdoor association to
/// transfer. An empty trigger means "no trigger".
inline std::string render_context_prompt(const std::vector<std::string>& reference_texts, const std::string& question,
                                         const std::string& trigger = {}) {
    std::string prompt;
    for (const std::string& text : reference_texts) {
        prompt += "Reference: ";
        prompt += text;
        prompt += "\n\n";
    }
    prompt += question;
    if (!trigger.empty()) {
        prompt += '\n';
        prompt += trigger;
    }
    return prompt;
}

}  // namespace ragleak
