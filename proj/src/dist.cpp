#include "sofree/dist.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "sofree/cumulants.hpp"

namespace sofree {

using nlohmann::json;

namespace {

std::string star_name(const std::string& n) { return n + "*"; }

// Cyclically alternating between two letters: w[k] != w[k+1], wrap included.
bool alternates(const Word& w) {
    if (w.size() % 2) return false;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] == w[(k + 1) % w.size()]) return false;
    return true;
}

json origin_doc(const BuiltinSpec& s, const std::string& letter, const std::string& family) {
    json o = {{"rule", s.kind}, {"truncation", s.truncation}, {"letter", letter}, {"family", family}};
    if (s.kind == "free_poisson") o["rate"] = to_wire(s.rate);
    return o;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"haar_unitary", "semicircular", "circular", "free_poisson",
                                                "circular_product"};
    return names;
}

bool is_builtin_name(std::string_view name) {
    auto base = name.substr(0, name.find(':'));
    for (const auto& n : builtin_names())
        if (n == base) return true;
    return false;
}

ModelPtr build(const BuiltinSpec& spec) {
    const std::string& k = spec.kind;
    auto pick = [&](const char* dflt) { return spec.letter.empty() ? std::string(dflt) : spec.letter; };
    std::shared_ptr<Model> m;
    std::string letter, family;
    auto zero2 = [](const Word&, const Word&) { return Rational(0); };
    if (k == "semicircular") {
        letter = pick("s");
        family = spec.family.empty() ? letter : spec.family;
        m = std::make_shared<RuleModel>(
            k, std::vector<Letter>{{letter, family, letter}}, spec.truncation,
            [](const Word& w) { return Rational(w.size() == 2 ? 1 : 0); }, zero2, 2, true);
    } else if (k == "circular" || k == "circular_product") {
        letter = pick(k == "circular" ? "c" : "h");
        family = spec.family.empty() ? letter : spec.family;
        std::vector<Letter> ab{{letter, family, star_name(letter)}, {star_name(letter), family, letter}};
        if (k == "circular") {
            m = std::make_shared<RuleModel>(
                k, ab, spec.truncation,
                [](const Word& w) { return Rational(w.size() == 2 && w[0] != w[1] ? 1 : 0); }, zero2, 2, true);
        } else {
            // c1 c2: every alternating cumulant is 1, nothing else survives.
            m = std::make_shared<RuleModel>(
                k, ab, spec.truncation, [](const Word& w) { return Rational(alternates(w) ? 1 : 0); }, zero2, 0,
                true);
        }
    } else if (k == "free_poisson") {
        if (sgn(spec.rate) <= 0) throw Error("free_poisson rate must be positive");
        letter = pick("p");
        family = spec.family.empty() ? letter : spec.family;
        Rational rate = spec.rate;
        m = std::make_shared<RuleModel>(
            k, std::vector<Letter>{{letter, family, letter}}, spec.truncation, [rate](const Word&) { return rate; },
            zero2, 0, true);
    } else if (k == "haar_unitary") {
        letter = pick("u");
        family = spec.family.empty() ? letter : spec.family;
        auto total = [](const Word& w) {
            int s = 0;
            for (int x : w) s += x == 0 ? 1 : -1;
            return s;
        };
        m = std::make_shared<MomentRuleModel>(
            k, std::vector<Letter>{{letter, family, star_name(letter)}, {star_name(letter), family, letter}},
            spec.truncation, [total](const Word& w) { return Rational(total(w) == 0 ? 1 : 0); },
            [total](const Word& a, const Word& b) {
                int s = total(a);
                return Rational(s == -total(b) ? std::abs(s) : 0);
            });
    } else {
        throw Error("unknown builtin '" + k + "'");
    }
    m->set_origin(origin_doc(spec, letter, family).dump());
    return m;
}

ModelPtr builtin(std::string_view name, int truncation, std::string_view letter) {
    BuiltinSpec s;
    auto colon = name.find(':');
    s.kind = std::string(name.substr(0, colon));
    if (colon != std::string_view::npos) {
        if (s.kind != "free_poisson") throw Error("only free_poisson takes a parameter");
        s.rate = parse_rational(name.substr(colon + 1));
    }
    s.truncation = truncation;
    s.letter = std::string(letter);
    return build(s);
}

ModelPtr haar_exponents(const std::vector<int>& exponents, int truncation) {
    std::set<int> ex(exponents.begin(), exponents.end());
    std::vector<int> order(ex.begin(), ex.end());
    std::vector<Letter> letters;
    for (int e : order) {
        if (e == 0) throw Error("exponent 0 is not a letter");
        if (!ex.count(-e)) throw Error("exponent " + std::to_string(e) + " lacks its adjoint");
        letters.push_back({"u^" + std::to_string(e), "u", "u^" + std::to_string(-e)});
    }
    auto total = [order](const Word& w) {
        long s = 0;
        for (int x : w) s += order[static_cast<std::size_t>(x)];
        return s;
    };
    auto m = std::make_shared<MomentRuleModel>(
        "haar_exponents", letters, truncation, [total](const Word& w) { return Rational(total(w) == 0 ? 1 : 0); },
        [total](const Word& a, const Word& b) {
            long s = total(a);
            return Rational(s == -total(b) ? std::labs(s) : 0L);
        });
    return m;
}

// ---- JSON -----------------------------------------------------------------

namespace {

std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

Rational rational_at(const json& v, const std::string& ptr) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::exception& e) {
        throw LoadError(ptr, e.what());
    }
    throw LoadError(ptr, "expected a rational string such as \"3/4\" or an integer");
}

int int_at(const json& doc, const char* key, const std::string& ptr, int dflt) {
    if (!doc.contains(key)) return dflt;
    const auto& v = doc[key];
    if (!v.is_number_integer() || v.get<long>() < 1 || v.get<long>() > 64)
        throw LoadError(ptr + "/" + key, "expected an integer between 1 and 64");
    return v.get<int>();
}

std::string string_at(const json& doc, const char* key, const std::string& ptr, bool required) {
    if (!doc.contains(key)) {
        if (required) throw LoadError(ptr + "/" + key, "missing");
        return {};
    }
    if (!doc[key].is_string()) throw LoadError(ptr + "/" + key, "expected a string");
    return doc[key].get<std::string>();
}

// Throwaway model used only to parse and enumerate words over an alphabet.
class AlphabetOnly : public Model {
public:
    using Model::Model;
    std::string kind() const override { return "alphabet"; }
};

ModelPtr load_at(const json& doc, const std::string& ptr);

ModelPtr load_rule(const json& doc, const std::string& ptr) {
    BuiltinSpec s;
    s.kind = string_at(doc, "rule", ptr, true);
    if (!is_builtin_name(s.kind) || s.kind.find(':') != std::string::npos)
        throw LoadError(ptr + "/rule", "unknown builtin '" + s.kind + "'");
    s.truncation = int_at(doc, "truncation", ptr, 32);
    s.letter = string_at(doc, "letter", ptr, false);
    s.family = string_at(doc, "family", ptr, false);
    if (doc.contains("rate")) {
        if (s.kind != "free_poisson") throw LoadError(ptr + "/rate", "only free_poisson takes a rate");
        s.rate = rational_at(doc["rate"], ptr + "/rate");
        if (sgn(s.rate) <= 0) throw LoadError(ptr + "/rate", "rate must be positive");
    }
    try {
        return build(s);
    } catch (const LoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(ptr, e.what());
    }
}

std::vector<Letter> load_alphabet(const json& doc, const std::string& ptr) {
    if (!doc.contains("alphabet") || !doc["alphabet"].is_array() || doc["alphabet"].empty())
        throw LoadError(ptr + "/alphabet", "expected a nonempty array of letters");
    std::vector<Letter> out;
    const auto& arr = doc["alphabet"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = ptr + "/alphabet/" + std::to_string(i);
        if (!arr[i].is_object()) throw LoadError(p, "expected an object");
        Letter l;
        l.name = string_at(arr[i], "name", p, true);
        l.family = string_at(arr[i], "family", p, false);
        if (l.family.empty()) l.family = l.name;
        l.star = string_at(arr[i], "star", p, false);
        if (l.star.empty()) l.star = l.name;
        out.push_back(l);
    }
    // Validate names and the star involution, pointing at the first bad letter.
    std::set<std::string> names;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::string p = ptr + "/alphabet/" + std::to_string(i);
        if (out[i].name.find_first_of(".| ") != std::string::npos) throw LoadError(p + "/name", "invalid letter name");
        if (!names.insert(out[i].name).second) throw LoadError(p + "/name", "duplicate letter");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::string p = ptr + "/alphabet/" + std::to_string(i) + "/star";
        const Letter* partner = nullptr;
        for (const auto& l : out)
            if (l.name == out[i].star) partner = &l;
        if (!partner) throw LoadError(p, "unknown adjoint '" + out[i].star + "'");
        if (partner->star != out[i].name) throw LoadError(p, "star pairing is not involutive");
        if (partner->family != out[i].family) throw LoadError(p, "adjoint lies in another family");
    }
    return out;
}

Word parse_key(const Model& alpha, const std::string& key, const std::string& ptr) {
    try {
        return alpha.parse_word(key);
    } catch (const std::exception& e) {
        throw LoadError(ptr, e.what());
    }
}

ModelPtr load_tables(const json& doc, const std::string& ptr) {
    auto letters = load_alphabet(doc, ptr);
    int trunc = int_at(doc, "truncation", ptr, 0);
    if (trunc == 0) throw LoadError(ptr + "/truncation", "missing");
    std::string side = string_at(doc, "side", ptr, true);
    if (side != "cumulants" && side != "moments") throw LoadError(ptr + "/side", "expected \"cumulants\" or \"moments\"");
    bool moments = side == "moments";
    AlphabetOnly alpha(letters, trunc);

    std::unordered_map<Word, Rational, WordHash> first, second;
    if (!doc.contains("first") || !doc["first"].is_object()) throw LoadError(ptr + "/first", "expected an object");
    for (const auto& [key, v] : doc["first"].items()) {
        std::string p = ptr + "/first/" + escape_pointer(key);
        Word w = parse_key(alpha, key, p);
        if (w.empty()) throw LoadError(p, "empty word");
        if (static_cast<int>(w.size()) > trunc) throw LoadError(p, "word longer than truncation");
        if (!alpha.single_family(w)) throw LoadError(p, "word mixes families; mixed entries follow from freeness");
        first[w] = rational_at(v, p);
    }
    bool second_zero = false;
    if (!doc.contains("second")) throw LoadError(ptr + "/second", "missing (use \"zero\" for none)");
    if (doc["second"].is_string() && doc["second"].get<std::string>() == "zero") {
        second_zero = true;
    } else if (doc["second"].is_object()) {
        for (const auto& [key, v] : doc["second"].items()) {
            std::string p = ptr + "/second/" + escape_pointer(key);
            auto bar = key.find('|');
            if (bar == std::string::npos) throw LoadError(p, "expected \"word|word\"");
            Word a = parse_key(alpha, key.substr(0, bar), p), b = parse_key(alpha, key.substr(bar + 1), p);
            if (a.empty() || b.empty()) throw LoadError(p, "empty side");
            if (static_cast<int>(a.size() + b.size()) > trunc) throw LoadError(p, "pair longer than truncation");
            if (!alpha.single_family(a, b)) throw LoadError(p, "pair mixes families");
            second[pair_key(a, b)] = rational_at(v, p);
        }
    } else {
        throw LoadError(ptr + "/second", "expected an object or \"zero\"");
    }
    // Completeness up to truncation.
    for (const auto& w : words_up_to(alpha, trunc))
        if (alpha.single_family(w) && !first.count(w))
            throw LoadError(ptr + "/first", "missing entry for '" + alpha.word_text(w) + "'");
    if (second_zero) {
        for (const auto& [a, b] : word_pairs_up_to(alpha, trunc))
            if (alpha.single_family(a, b)) second[pair_key(a, b)] = 0;
    } else {
        for (const auto& [a, b] : word_pairs_up_to(alpha, trunc))
            if (alpha.single_family(a, b) && !second.count(pair_key(a, b)))
                throw LoadError(ptr + "/second",
                                "missing entry for '" + alpha.word_text(a) + "|" + alpha.word_text(b) + "'");
    }
    bool tracial = true;
    for (const auto& [w, v] : first) {
        Word r = w;
        for (std::size_t k = 1; k < w.size() && tracial; ++k) {
            std::rotate(r.begin(), r.begin() + 1, r.end());
            auto it = first.find(r);
            if (it == first.end() || it->second != v) tracial = false;
        }
    }
    auto m = std::make_shared<TableModel>(letters, trunc, moments, std::move(first), std::move(second));
    m->set_tracial(tracial);
    return m;
}

ModelPtr load_at(const json& doc, const std::string& ptr) {
    if (!doc.is_object()) throw LoadError(ptr.empty() ? "/" : ptr, "expected an object");
    if (doc.contains("rule")) return load_rule(doc, ptr);
    if (doc.contains("free_product")) {
        const auto& parts = doc["free_product"];
        if (!parts.is_array() || parts.empty()) throw LoadError(ptr + "/free_product", "expected a nonempty array");
        std::vector<ModelPtr> ms;
        for (std::size_t i = 0; i < parts.size(); ++i)
            ms.push_back(load_at(parts[i], ptr + "/free_product/" + std::to_string(i)));
        try {
            return std::make_shared<FreeProduct>(ms);
        } catch (const std::exception& e) {
            throw LoadError(ptr + "/free_product", e.what());
        }
    }
    return load_tables(doc, ptr);
}

}  // namespace

ModelPtr load_model(const json& doc) { return load_at(doc, ""); }

ModelPtr load_model_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LoadError("/", std::string("invalid JSON: ") + e.what());
    }
    return load_model(doc);
}

ModelPtr resolve_model(std::string_view ref, int truncation) {
    if (is_builtin_name(ref)) return builtin(ref, truncation);
    std::ifstream in{std::string(ref)};
    if (!in) throw Error("'" + std::string(ref) + "' is neither a builtin nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model_text(ss.str());
}

json emit_model(const Model& m, int order) {
    if (!m.origin().empty()) return json::parse(m.origin());
    if (auto fp = dynamic_cast<const FreeProduct*>(&m)) {
        json parts = json::array();
        for (const auto& p : fp->parts()) parts.push_back(emit_model(*p, order));
        return {{"free_product", parts}};
    }
    int trunc = order > 0 ? order : m.truncation();
    json alphabet = json::array();
    for (const auto& l : m.alphabet()) alphabet.push_back({{"name", l.name}, {"family", l.family}, {"star", l.star}});
    bool moments = m.moment_primary();
    json first = json::object(), second = json::object();
    for (const auto& w : words_up_to(m, trunc))
        if (m.single_family(w)) first[m.word_text(w)] = to_wire(moments ? m.phi(w) : m.kappa(w));
    for (const auto& [a, b] : word_pairs_up_to(m, trunc))
        if (m.single_family(a, b))
            second[m.word_text(a) + "|" + m.word_text(b)] = to_wire(moments ? m.phi2(a, b) : m.kappa2(a, b));
    return {{"alphabet", alphabet},
            {"truncation", trunc},
            {"side", moments ? "moments" : "cumulants"},
            {"first", first},
            {"second", second}};
}

}  // namespace sofree
