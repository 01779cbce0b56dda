#include "delta/llm/extract.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace delta::llm {

std::vector<std::string> fenced_blocks(std::string_view text) {
    std::vector<std::string> blocks;
    std::istringstream is{std::string(text)};
    std::string line;
    bool inside = false;
    std::string current;
    while (std::getline(is, line)) {
        std::string trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
            trimmed.erase(trimmed.begin());
        if (trimmed.rfind("```", 0) == 0) {
            if (inside) {
                blocks.push_back(current);
                current.clear();
            }
            inside = !inside;  // opening fence may carry a language tag
            continue;
        }
        if (inside) {
            current += line;
            current += '\n';
        }
    }
    return blocks;
}

std::string strip_code_fences(std::string_view text) {
    std::vector<std::string> blocks = fenced_blocks(text);
    if (blocks.empty())
        return std::string(text);
    std::string out;
    for (const auto& b : blocks)
        out += b;
    return out;
}

std::vector<std::string> balanced_forms(std::string_view text) {
    std::vector<std::string> forms;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '(') {
            ++i;
            continue;
        }
        int depth = 0;
        size_t j = i;
        bool closed = false;
        for (; j < text.size(); ++j) {
            if (text[j] == ';') {  // comment to end of line
                while (j < text.size() && text[j] != '\n')
                    ++j;
                if (j == text.size())
                    break;
                continue;
            }
            if (text[j] == '(')
                ++depth;
            else if (text[j] == ')' && --depth == 0) {
                closed = true;
                break;
            }
        }
        if (!closed)
            break;  // unterminated form: never return unbalanced text
        forms.emplace_back(text.substr(i, j - i + 1));
        i = j + 1;
    }
    return forms;
}

namespace {

std::vector<std::string> define_forms(std::string_view text) {
    std::vector<std::string> out;
    for (auto& form : balanced_forms(text)) {
        std::string head = form.substr(0, form.find_first_of(" \t\r\n(", 1));
        std::transform(head.begin(), head.end(), head.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (head == "(define")
            out.push_back(std::move(form));
    }
    return out;
}

}  // namespace

std::vector<std::string> extract_pddl(std::string_view text) {
    std::vector<std::string> sources;
    for (const auto& block : fenced_blocks(text))
        for (auto& form : define_forms(block))
            sources.push_back(std::move(form));
    if (sources.empty())
        sources = define_forms(text);
    if (sources.empty())
        throw NoPlanningFileFound("no planning file found in the response");
    return sources;
}

std::vector<std::string> parse_item_list(std::string_view text) {
    std::string body = strip_code_fences(text);
    std::vector<std::string> items;
    std::string token;
    auto flush = [&] {
        // strip bullets, quotes and backticks around the id
        while (!token.empty() && (token.front() == '-' || token.front() == '*' ||
                                  token.front() == '`' || token.front() == '"' ||
                                  token.front() == '\''))
            token.erase(token.begin());
        while (!token.empty() && (token.back() == '`' || token.back() == '"' ||
                                  token.back() == '\'' || token.back() == '.'))
            token.pop_back();
        bool numbering = !token.empty() &&
                         std::all_of(token.begin(), token.end(), [](unsigned char c) {
                             return std::isdigit(c) != 0;
                         });
        if (!token.empty() && !numbering) {
            std::transform(token.begin(), token.end(), token.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (std::find(items.begin(), items.end(), token) == items.end())
                items.push_back(token);
        }
        token.clear();
    };
    for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';')
            flush();
        else
            token += c;
    }
    flush();
    return items;
}

}  // namespace delta::llm
