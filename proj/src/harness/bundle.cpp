#include "delta/harness/bundle.hpp"

#include <algorithm>

#include "delta/llm/extract.hpp"
#include "delta/pddl/errors.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/pddl/printer.hpp"

namespace delta::harness {

const std::vector<std::string>& bundled_domain_ids() {
    static const std::vector<std::string> ids = {"laundry", "pc_assembly",
                                                 "dining_table_setup", "house_cleaning"};
    return ids;
}

const std::vector<std::string>& bundled_scene_ids() {
    static const std::vector<std::string> ids = {"kemblesville", "parole", "allensville",
                                                 "shelbiana"};
    return ids;
}

const std::vector<std::string>& evaluation_domain_ids() {
    static const std::vector<std::string> ids = {"pc_assembly", "dining_table_setup",
                                                 "house_cleaning"};
    return ids;
}

const std::vector<std::string>& evaluation_scene_ids() {
    static const std::vector<std::string> ids = {"parole", "allensville", "shelbiana"};
    return ids;
}

scene::SceneVocabulary bundle_vocabulary() {
    scene::SceneVocabulary vocab;
    vocab.affordance_predicates = {{"pick", "item_pickable"}};
    vocab.name_predicates = {
        {"mop", {"item_is_mop"}},
        {"rubbish bin", {"item_is_bin"}},
        {"kitchen sink", {"item_is_sink"}},
        {"bathroom sink", {"item_is_sink"}},
        {"charging station", {"item_is_charger"}},
        {"dining table", {"item_is_table"}},
        {"washing machine", {"item_is_washer"}},
        {"dirty clothes", {"item_is_clothes"}},
        {"detergent", {"item_is_detergent"}},
    };
    vocab.state_rules = {{"clean", "true", "mop_clean"}};
    return vocab;
}

DomainContent load_domain_content(const AssetStore& assets, const std::string& domain_id) {
    const auto& ids = bundled_domain_ids();
    if (std::find(ids.begin(), ids.end(), domain_id) == ids.end())
        throw AssetError("unknown bundled domain '" + domain_id + "'");
    const std::string base = "domains/" + domain_id + "/";
    DomainContent content;
    content.id = domain_id;
    content.domain_pddl = assets.read_text(base + "domain.pddl");
    content.domain_nl = assets.read_text(base + "domain_nl.txt");
    content.goal_nl = assets.read_text(base + "goal_nl.txt");
    content.goal_pddl = assets.read_text(base + "goal.pddl");
    content.keep_list = assets.read_text(base + "keep.txt");
    content.subgoals_pddl = assets.read_text(base + "subgoals.pddl");
    content.subgoals_nl = assets.read_text(base + "subgoals_nl.txt");
    content.vocab = bundle_vocabulary();
    if (domain_id == "house_cleaning")
        content.robot_unary_facts = {"battery_full"};
    return content;
}

scene::SceneGraph load_scene(const AssetStore& assets, const std::string& scene_id) {
    const auto& ids = bundled_scene_ids();
    if (std::find(ids.begin(), ids.end(), scene_id) == ids.end())
        throw AssetError("unknown bundled scene '" + scene_id + "'");
    return scene::load_scene_graph(assets.read_text("scenes/" + scene_id + ".json"));
}

namespace {

// Splits "(and L1 L2 ...)" into the literal texts, without semantic checks
// so goal overrides may reference objects on purpose absent from the
// problem (used when seeding fault fixtures).
std::vector<std::string> goal_literal_texts(const std::string& goal_text) {
    std::vector<std::string> forms = llm::balanced_forms(goal_text);
    if (forms.size() != 1)
        throw AssetError("goal text must be a single (and ...) conjunction");
    std::string inner = forms[0];
    auto head = inner.find_first_not_of(" \t\r\n", 1);
    if (head == std::string::npos || inner.compare(head, 3, "and") != 0)
        throw AssetError("goal text must start with (and ...)");
    inner = inner.substr(head + 3, inner.size() - head - 4);  // body up to final ')'
    return llm::balanced_forms(inner);
}

}  // namespace

std::string build_problem_text(const scene::SceneGraph& sg, const pddl::DomainAst& d,
                               const DomainContent& content, const std::string& problem_name,
                               const std::string& goal_text_override) {
    pddl::ProblemAst p;
    p.name = problem_name;
    p.domain_name = d.name;
    p.objects.push_back({content.robot_name, content.agent_type});
    for (const auto& room : sg.rooms)
        p.objects.push_back({room.id, content.vocab.room_type});
    for (const auto& item : scene::list_items(sg))
        p.objects.push_back({item.id, content.vocab.item_type});

    if (!sg.find_room(content.start_room))
        throw AssetError("scene '" + sg.name + "' has no start room '" + content.start_room +
                         "'");
    p.init.push_back({"agent_at", {content.robot_name, content.start_room}});
    for (const auto& fact : content.robot_unary_facts)
        if (d.find_predicate(fact))
            p.init.push_back({fact, {content.robot_name}});
    for (auto& atom : scene::encode_scene_facts(sg, d, content.vocab))
        p.init.push_back(std::move(atom));
    for (auto& atom : scene::encode_item_attribute_facts(sg, d, content.vocab))
        p.init.push_back(std::move(atom));

    std::string text = pddl::print_problem(p);  // empty goal block
    const std::string marker = "    (:goal (and\n";
    auto pos = text.find(marker);
    if (pos == std::string::npos)
        throw AssetError("internal: printed problem lacks the goal block");
    std::string literals;
    const std::string& goal_text =
        goal_text_override.empty() ? content.goal_pddl : goal_text_override;
    for (const auto& lit : goal_literal_texts(goal_text))
        literals += "        " + lit + "\n";
    text.insert(pos + marker.size(), literals);
    return text;
}

pddl::ProblemAst build_problem(const scene::SceneGraph& sg, const pddl::DomainAst& d,
                               const DomainContent& content, const std::string& problem_name) {
    return pddl::parse_problem(build_problem_text(sg, d, content, problem_name), d);
}

}  // namespace delta::harness
