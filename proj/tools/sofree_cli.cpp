// sofree: enumeration, transforms, theorem checks and diagrams.
//
// Exit codes: 0 success, 1 check failure, 2 usage or invalid input,
// 3 enumeration cap exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "sofree/sofree.h"

using nlohmann::json;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, cap = 3 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(int status) {
    switch (status) {
        case SOFREE_OK: return ok;
        case SOFREE_CHECK_FAILED: return check_failed;
        case SOFREE_E_CAP: return cap;
        default: return usage;
    }
}

[[noreturn]] void fail_status(int status) { throw Failure{exit_for(status), sofree_last_error()}; }

struct ModelHandle {
    sofree_model* p = nullptr;
    ModelHandle() = default;
    ModelHandle(const ModelHandle&) = delete;
    ModelHandle& operator=(const ModelHandle&) = delete;
    ~ModelHandle() { sofree_model_free(p); }
};

void open_model(ModelHandle& h, const std::string& ref, int truncation, const char* flag) {
    if (ref.empty()) throw Failure{usage, std::string(flag) + " is required"};
    int st = sofree_model_open(ref.c_str(), truncation, &h.p);
    if (st != SOFREE_OK) fail_status(st);
}

json model_json(const ModelHandle& h) {
    char* s = nullptr;
    int st = sofree_model_json(h.p, &s);
    if (st != SOFREE_OK) fail_status(st);
    json j = json::parse(s);
    sofree_string_free(s);
    return j;
}

// Takes ownership of a library string; a report is expected for OK and CHECK_FAILED.
json take_report(int status, char* s) {
    if (status != SOFREE_OK && status != SOFREE_CHECK_FAILED) fail_status(status);
    json j = json::parse(s);
    sofree_string_free(s);
    return j;
}

std::string hex8(unsigned long v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08lx", v & 0xffffffffUL);
    return buf;
}

// crc32 of the canonical inputs; model references are replaced by their
// emitted content so that a file and its builtin spell hash alike.
std::string digest(const json& inputs) { return hex8(sofree_cli::crc32_of(inputs.dump())); }

struct ShapeArg {
    int m = 0, n = 0;
};

ShapeArg parse_shape(const std::string& text) {
    ShapeArg s;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> s.m >> comma >> s.n) || comma != ',' || !is.eof() || s.m < 1 || s.n < 1)
        throw Failure{usage, "--shape expects m,n with positive integers, got '" + text + "'"};
    return s;
}

void write_out(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << data)) throw Failure{usage, "cannot write " + path};
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// ---- enumerate --------------------------------------------------------------

struct EnumArgs {
    std::string kind;
    std::string shape;
    int n = 0, k = 0;
    bool count_only = false;
};

int cb_collect(const char* line, void* user) {
    static_cast<std::vector<std::string>*>(user)->emplace_back(line);
    return 0;
}

int run_enumerate(const EnumArgs& a, const std::string& format, bool format_given, const std::string& cache_dir) {
    int m = 0, n = 0;
    if (a.kind == "nc") {
        if (a.n < 1) throw Failure{usage, "enumerate nc needs --n"};
        n = a.n;
    } else {
        if (a.shape.empty()) throw Failure{usage, "enumerate " + a.kind + " needs --shape m,n"};
        auto s = parse_shape(a.shape);
        m = s.m;
        n = s.n;
        if (a.kind == "snc-k-alt" && a.k < 1) throw Failure{usage, "enumerate snc-k-alt needs --k"};
    }
    if (format != "json" && format != "csv" && format != "text") throw Failure{usage, "enumerate supports json, csv, text"};

    sofree_cli::CacheKey key{a.kind, m, n, a.kind == "snc-k-alt" ? a.k : 0, sofree_version()};
    std::unique_ptr<sofree_cli::Cache> cache;
    if (!cache_dir.empty()) cache = std::make_unique<sofree_cli::Cache>(cache_dir);

    std::vector<std::string> lines;
    bool have = false;
    if (cache) {
        if (auto hit = cache->load(key)) {
            lines = std::move(*hit);
            have = true;
        }
    }
    long long count = 0;
    if (!have) {
        // Counting alone need not materialize the stream unless it is cached.
        bool collect = !a.count_only || cache;
        int st = sofree_enumerate(a.kind.c_str(), m, n, a.k, collect ? cb_collect : nullptr, &lines, &count);
        if (st != SOFREE_OK) fail_status(st);
        if (cache) {
            std::string err;
            if (!cache->store(key, lines, &err)) std::cerr << "sofree: cache not written: " << err << "\n";
        }
    } else {
        count = static_cast<long long>(lines.size());
    }

    json inputs = {{"command", "enumerate"}, {"kind", a.kind}, {"m", m}, {"n", n}, {"k", a.k}};
    if (a.count_only) {
        if (format_given && format == "json")
            std::cout << json{{"tool", "sofree"}, {"version", sofree_version()}, {"input_digest", digest(inputs)},
                              {"kind", a.kind}, {"count", count}}.dump()
                      << "\n";
        else
            std::cout << count << "\n";
        return ok;
    }
    if (format == "json") {
        json header = {{"tool", "sofree"}, {"version", sofree_version()}, {"input_digest", digest(inputs)},
                       {"kind", a.kind}, {"count", count}};
        if (a.kind == "nc")
            header["n"] = n;
        else
            header["shape"] = {m, n};
        if (a.kind == "snc-k-alt") header["k"] = a.k;
        std::cout << header.dump() << "\n";
        for (const auto& l : lines) std::cout << l << "\n";
    } else if (format == "csv") {
        bool ps = a.kind == "psnc";
        std::cout << (ps ? "index,partition,cycles,class\n" : "index,cycles,class,parity\n");
        for (const auto& l : lines) {
            auto o = json::parse(l);
            std::cout << o["index"].get<long long>() << ",";
            if (ps) std::cout << csv_quote(o["partition"]) << ",";
            std::cout << csv_quote(o["cycles"]) << "," << o["class"].get<std::string>();
            if (!ps) std::cout << "," << o["parity"].get<std::string>();
            std::cout << "\n";
        }
    } else {
        for (const auto& l : lines) {
            auto o = json::parse(l);
            if (o.contains("partition")) std::cout << o["partition"].get<std::string>() << " ";
            std::cout << o["cycles"].get<std::string>() << "\n";
        }
    }
    return ok;
}

// ---- transform / square / check ----------------------------------------------

void print_doc(json doc, const json& inputs) {
    doc["input_digest"] = digest(inputs);
    std::cout << doc.dump(2) << "\n";
}

int run_transform(const std::string& model, int truncation, const std::string& direction, const std::string& order_text,
                  int cutoff, bool verify, const std::string& format) {
    int order;
    if (order_text == "first" || order_text == "1")
        order = 1;
    else if (order_text == "second" || order_text == "2")
        order = 2;
    else
        throw Failure{usage, "--order must be first or second"};
    if (format != "json" && format != "csv" && format != "text") throw Failure{usage, "transform supports json, csv, text"};
    ModelHandle h;
    open_model(h, model, truncation, "--model");
    char* s = nullptr;
    int st = sofree_transform(h.p, direction.c_str(), order, cutoff, verify ? 1 : 0, &s);
    json doc = take_report(st, s);
    json inputs = {{"command", "transform"}, {"model", model_json(h)}, {"direction", direction}, {"order", order},
                   {"cutoff", cutoff}, {"verify_roundtrip", verify}};
    if (format == "json") {
        print_doc(doc, inputs);
    } else {
        if (format == "csv") std::cout << (order == 1 ? "word,value\n" : "left,right,value\n");
        for (const auto& e : doc["entries"]) {
            std::string v = e["value"];
            if (format == "csv")
                std::cout << (order == 1 ? csv_quote(e["word"]) : csv_quote(e["left"]) + "," + csv_quote(e["right"])) << ","
                          << v << "\n";
            else if (order == 1)
                std::cout << doc["quantity"].get<std::string>() << "(" << e["word"].get<std::string>() << ") = " << v << "\n";
            else
                std::cout << doc["quantity"].get<std::string>() << "(" << e["left"].get<std::string>() << " ; "
                          << e["right"].get<std::string>() << ") = " << v << "\n";
        }
        if (doc.contains("roundtrip"))
            std::cerr << "roundtrip: " << (doc["roundtrip"]["pass"].get<bool>() ? "ok" : "MISMATCH") << "\n";
    }
    return st == SOFREE_OK ? ok : check_failed;
}

void flat_rows(const json& section, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [k, v] : section.items()) rows.emplace_back(prefix + "," + csv_quote(k), v.get<std::string>());
}

int run_square(const std::string& model, int truncation, const std::string& direction, int cutoff,
               const std::string& format) {
    if (format != "json" && format != "csv" && format != "text") throw Failure{usage, "square supports json, csv, text"};
    ModelHandle h;
    open_model(h, model, truncation, "--model");
    char* s = nullptr;
    int st = sofree_square(h.p, direction.c_str(), cutoff, &s);
    json doc = take_report(st, s);
    json inputs = {{"command", "square"}, {"model", model_json(h)}, {"direction", direction}, {"cutoff", cutoff}};
    if (format == "json") {
        print_doc(doc, inputs);
        return ok;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const char* table : {"beta", "square"}) {
        if (!doc.contains(table)) continue;
        flat_rows(doc[table]["first"], std::string(table) + ",first", rows);
        flat_rows(doc[table]["second"], std::string(table) + ",second", rows);
    }
    if (format == "csv") {
        std::cout << "table,order,index,value\n";
        for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
    } else {
        for (const auto& [k, v] : rows) std::cout << k << " = " << v << "\n";
    }
    return ok;
}

struct CheckArgs {
    std::string target, model, r, b;
    int order = 6, cutoff = 8, criterion = 0, truncation = 0;
};

int run_check(const CheckArgs& a, const std::string& format) {
    if (format != "json" && format != "text") throw Failure{usage, "check supports json, text"};
    ModelHandle ma, mb;
    json inputs = {{"command", "check"}, {"target", a.target}};
    int param = a.order;
    if (a.target == "series" || a.target == "rdiag" || a.target == "even") {
        open_model(ma, a.model, a.truncation, "--model");
        inputs["model"] = model_json(ma);
        if (a.target == "series") param = a.cutoff;
    } else if (a.target == "mt1") {
        open_model(ma, a.r, a.truncation, "--r");
        open_model(mb, a.b, a.truncation, "--b");
        inputs["r"] = model_json(ma);
        inputs["b"] = model_json(mb);
    } else if (a.target == "examples") {
        param = a.criterion;
    } else {
        throw Failure{usage, "unknown check '" + a.target + "' (series, rdiag, even, mt1, examples)"};
    }
    inputs["param"] = param;
    char* s = nullptr;
    int st = sofree_check(a.target.c_str(), ma.p, mb.p, param, &s);
    json doc = take_report(st, s);
    if (format == "json") {
        print_doc(doc, inputs);
    } else if (a.target == "examples") {
        int passed = 0;
        for (const auto& c : doc["criteria"]) {
            bool p = c["pass"];
            passed += p;
            std::cout << "criterion " << c["id"].get<int>() << " (" << c["title"].get<std::string>()
                      << "): " << (p ? "PASS" : "FAIL") << "\n";
            for (const auto& k : c["checks"])
                std::cout << "  " << (k["pass"].get<bool>() ? "ok  " : "FAIL") << " " << k["label"].get<std::string>()
                          << ": expected " << k["expected"].get<std::string>() << ", got "
                          << k["actual"].get<std::string>() << "\n";
            if (c.contains("error")) std::cout << "  error: " << c["error"].get<std::string>() << "\n";
        }
        std::cout << passed << " of " << doc["criteria"].size() << " criteria passed\n";
    } else {
        std::cout << a.target << ": " << (doc["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        if (doc.contains("violation")) std::cout << "  " << doc["violation"].get<std::string>() << "\n";
        if (doc.contains("violations"))
            for (const auto& v : doc["violations"]) std::cout << "  " << v.get<std::string>() << "\n";
        if (doc.contains("first_residual")) {
            std::cout << "  first residual: " << (doc["first_residual"].empty() ? "0" : doc["first_residual"].dump()) << "\n";
            std::cout << "  second residual: " << (doc["second_residual"].empty() ? "0" : doc["second_residual"].dump())
                      << "\n";
        }
    }
    return st == SOFREE_OK ? ok : check_failed;
}

int run_render(const std::string& perm, const std::string& shape, const std::string& output, const std::string& format) {
    if (format != "svg") throw Failure{usage, "render supports svg only"};
    if (perm.empty()) throw Failure{usage, "render needs --perm"};
    auto s = parse_shape(shape);
    char* out = nullptr;
    int st = sofree_render_svg(perm.c_str(), s.m, s.n, &out);
    if (st != SOFREE_OK) fail_status(st);
    std::string svg = out;
    sofree_string_free(out);
    write_out(output, svg);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-order free probability in exact rationals"};
    app.set_version_flag("--version", std::string(sofree_version()));
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    std::string format = "json";
    std::string cache_dir;
    if (const char* env = std::getenv("SOFREE_CACHE_DIR")) cache_dir = env;
    int truncation = 0;
    auto* fmt = app.add_option("--format", format, "json, csv, text or svg")->check(CLI::IsMember({"json", "csv", "text", "svg"}));
    app.add_option("--cache-dir", cache_dir, "enumeration cache (default: $SOFREE_CACHE_DIR)");
    app.add_option("--truncation", truncation, "word length limit for builtin models (default 32)");

    EnumArgs ea;
    auto* en = app.add_subcommand("enumerate", "stream non-crossing objects as JSON lines");
    en->add_option("kind", ea.kind, "nc, snc, psnc, pairings, snc-k-alt")
        ->required()
        ->check(CLI::IsMember({"nc", "snc", "psnc", "pairings", "snc-k-alt"}));
    en->add_option("--shape", ea.shape, "m,n");
    en->add_option("--n", ea.n, "disc size for nc");
    en->add_option("--k", ea.k, "period for snc-k-alt");
    en->add_flag("--count-only", ea.count_only, "print only the number of elements");

    std::string t_model, t_dir = "m2c", t_order = "first";
    int t_cutoff = 4;
    bool t_verify = false;
    auto* tr = app.add_subcommand("transform", "moment-cumulant tables of a model");
    tr->add_option("--model", t_model, "builtin name or JSON file")->required();
    tr->add_option("--direction", t_dir, "m2c or c2m")->check(CLI::IsMember({"m2c", "c2m"}));
    tr->add_option("--order", t_order, "first or second");
    tr->add_option("--cutoff", t_cutoff, "largest total word length");
    tr->add_flag("--verify-roundtrip", t_verify, "transform back and compare");

    std::string s_model, s_dir = "forward";
    int s_cutoff = 4;
    auto* sq = app.add_subcommand("square", "cumulants of x^2 or a a* from the determining sequences, and back");
    sq->add_option("--model", s_model, "builtin name or JSON file")->required();
    sq->add_option("--direction", s_dir, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));
    sq->add_option("--cutoff", s_cutoff, "largest total order");

    CheckArgs ca;
    auto* ck = app.add_subcommand("check", "verify a claim; exit 1 when it fails");
    ck->add_option("target", ca.target, "series, rdiag, even, mt1, examples")
        ->required()
        ->check(CLI::IsMember({"series", "rdiag", "even", "mt1", "examples"}));
    ck->add_option("--model", ca.model, "model for series, rdiag, even");
    ck->add_option("--r", ca.r, "R-diagonal factor for mt1");
    ck->add_option("--b", ca.b, "second factor for mt1");
    ck->add_option("--order", ca.order, "largest total length (rdiag, even, mt1)");
    ck->add_option("--cutoff", ca.cutoff, "series cutoff");
    ck->add_option("--criterion", ca.criterion, "examples: run one criterion (0: all)");

    std::string r_perm, r_shape, r_out;
    auto* rd = app.add_subcommand("render", "SVG chord diagram of an annular permutation");
    rd->add_option("--perm", r_perm, "cycle notation, 1-based, e.g. (1,5)(2,6)(3,4,7,8)")->required();
    rd->add_option("--shape", r_shape, "m,n")->required();
    rd->add_option("--output,-o", r_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*en) return run_enumerate(ea, format, fmt->count() > 0, cache_dir);
        if (*tr) return run_transform(t_model, truncation, t_dir, t_order, t_cutoff, t_verify, format);
        if (*sq) return run_square(s_model, truncation, s_dir, s_cutoff, format);
        if (*ck) return run_check(ca, format);
        if (*rd) return run_render(r_perm, r_shape, r_out, fmt->count() > 0 ? format : "svg");
    } catch (const Failure& f) {
        std::cerr << "sofree: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "sofree: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
