#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delta::llm {

class NoPlanningFileFound : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Contents of all ``` fenced blocks, in document order.
std::vector<std::string> fenced_blocks(std::string_view text);

// If the whole text is (or contains) fenced blocks, their concatenated
// contents; the text unchanged otherwise.
std::string strip_code_fences(std::string_view text);

// All balanced top-level s-expressions in the text, in document order.
// Prose between forms is ignored; an unterminated form is dropped.
std::vector<std::string> balanced_forms(std::string_view text);

// Planning-file sources from a model response: fenced code blocks are
// scanned first; without any, the text is scanned for balanced forms
// starting with "(define". Never returns unbalanced s-expressions; raises
// NoPlanningFileFound when nothing is extracted.
std::vector<std::string> extract_pddl(std::string_view text);

// Item ids from a pruning response: one id per line or comma separated,
// bullets/backticks/quotes tolerated, lower-cased. May be empty.
std::vector<std::string> parse_item_list(std::string_view text);

}  // namespace delta::llm
