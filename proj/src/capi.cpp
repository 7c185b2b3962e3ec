#include "sofree/sofree.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "sofree/acceptance.hpp"
#include "sofree/annular.hpp"
#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/render.hpp"
#include "sofree/series.hpp"
#include "sofree/special.hpp"

using nlohmann::json;
using namespace sofree;

struct sofree_model {
    ModelPtr m;
};

namespace {

thread_local std::string last_error;

// Raised for caller mistakes detected here, before any computation.
struct ArgumentError : Error {
    using Error::Error;
};

template <class F>
int guarded(F&& f) {
    last_error.clear();
    try {
        return f();
    } catch (const CapExceeded& e) {
        last_error = e.what();
        return SOFREE_E_CAP;
    } catch (const ArgumentError& e) {
        last_error = e.what();
        return SOFREE_E_ARGUMENT;
    } catch (const LoadError& e) {
        last_error = e.what();
        return SOFREE_E_ARGUMENT;
    } catch (const Error& e) {
        last_error = e.what();
        return SOFREE_E_DOMAIN;
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return SOFREE_E_INTERNAL;
    } catch (...) {
        last_error = "internal: unknown exception";
        return SOFREE_E_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void emit(char** out, const json& doc) {
    if (!out) throw ArgumentError("output pointer is null");
    *out = dup(doc.dump());
}

const Model& need(const sofree_model* m, const char* what) {
    if (!m || !m->m) throw ArgumentError(std::string(what) + " model is null");
    return *m->m;
}

json head(const char* operation) { return {{"tool", "sofree"}, {"version", SOFREE_VERSION}, {"operation", operation}}; }

json seq_json(const seq::Seq& s, int from) {
    json o = json::object();
    for (std::size_t n = static_cast<std::size_t>(from); n < s.size(); ++n) o[std::to_string(n)] = to_wire(s[n]);
    return o;
}

// Entries with 1 <= p, q and p + q <= total.
json grid_json(const seq::Grid& g, int total) {
    json o = json::object();
    for (int s = 2; s <= total; ++s)
        for (int p = 1; p < s; ++p) {
            int q = s - p;
            if (static_cast<std::size_t>(p) < g.size() && static_cast<std::size_t>(q) < g[static_cast<std::size_t>(p)].size())
                o[std::to_string(p) + "," + std::to_string(q)] = to_wire(g[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
        }
    return o;
}

json determining_json(const DeterminingSequence& d) {
    return {{"first", seq_json(d.first, 1)}, {"second", grid_json(d.second, d.order)}};
}

// The one self-adjoint letter of m, or -1.
int lone_selfadjoint(const Model& m) {
    if (m.num_letters() == 1 && m.star_of(0) == 0) return 0;
    return -1;
}

Word power(int letter, int n) { return Word(static_cast<std::size_t>(n), letter); }

DeterminingSequence determining_of(const Model& m, int order, std::string& kind) {
    if (lone_selfadjoint(m) == 0) {
        kind = "even";
        return determining_of_even(m, order);
    }
    kind = "r_diagonal";
    return determining_of_r_diagonal(m, order);
}

// The square as a model file: letter y, cumulant tables up to the cutoff.
json square_model_json(const SquareTables& t) {
    json first = json::object(), second = json::object();
    auto word = [](int n) {
        std::string s = "y";
        for (int k = 1; k < n; ++k) s += ".y";
        return s;
    };
    for (int n = 1; n <= t.order; ++n) first[word(n)] = to_wire(t.first[static_cast<std::size_t>(n)]);
    for (int s = 2; s <= t.order; ++s)
        for (int p = 1; p < s; ++p)
            second[word(p) + "|" + word(s - p)] = to_wire(t.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(s - p)]);
    return {{"alphabet", json::array({{{"name", "y"}, {"family", "y"}, {"star", "y"}}})},
            {"truncation", t.order},
            {"side", "cumulants"},
            {"first", first},
            {"second", second}};
}

json line_for(const Permutation& p, Shape s, long long index) {
    int through = 0;
    for (const auto& c : p.cycles())
        if (is_through(c, s)) ++through;
    json o = {{"index", index}, {"cycles", p.to_string()}, {"class", "annular_nc"}, {"through", through}};
    if (s.m % 2 == 0 && s.n % 2 == 0)
        o["parity"] = parity_name(classify_parity(p, s));
    else
        o["parity"] = is_even_cycles(p) ? "even" : "not-even";
    return o;
}

bool mismatch(const Table1& a, const Table1& b, const Model& m, std::string& where) {
    for (const auto& [w, v] : a)
        if (b.at(w) != v) {
            where = m.word_text(w);
            return true;
        }
    return false;
}

bool mismatch(const Table2& a, const Table2& b, const Model& m, std::string& where) {
    for (const auto& [k, v] : a)
        if (b.at(k) != v) {
            where = m.word_text(k.first) + "|" + m.word_text(k.second);
            return true;
        }
    return false;
}

}  // namespace

extern "C" {

const char* sofree_version(void) { return SOFREE_VERSION; }

const char* sofree_last_error(void) { return last_error.c_str(); }

void sofree_string_free(char* s) { std::free(s); }

int sofree_model_open(const char* ref, int truncation, sofree_model** out) {
    return guarded([&] {
        if (!ref || !out) throw ArgumentError("null argument");
        if (truncation < 0) throw ArgumentError("truncation must be nonnegative");
        ModelPtr m;
        try {
            m = resolve_model(ref, truncation > 0 ? truncation : 32);
        } catch (const LoadError&) {
            throw;
        } catch (const Error& e) {
            throw ArgumentError(e.what());
        }
        *out = new sofree_model{std::move(m)};
        return SOFREE_OK;
    });
}

int sofree_model_parse(const char* json_text, sofree_model** out) {
    return guarded([&] {
        if (!json_text || !out) throw ArgumentError("null argument");
        *out = new sofree_model{load_model_text(json_text)};
        return SOFREE_OK;
    });
}

void sofree_model_free(sofree_model* m) { delete m; }

int sofree_model_json(const sofree_model* m, char** out) {
    return guarded([&] {
        emit(out, emit_model(need(m, "the")));
        return SOFREE_OK;
    });
}

int sofree_enumerate(const char* kind, int m, int n, int k, sofree_line_fn fn, void* user, long long* count) {
    return guarded([&] {
        if (!kind) throw ArgumentError("null kind");
        std::string kd = kind;
        long long seen = 0;
        bool stop = false;
        auto send = [&](const json& o) {
            ++seen;
            if (fn && !stop && fn(o.dump().c_str(), user) != 0) stop = true;
        };
        auto shape = [&]() {
            if (m < 1 || n < 1) throw ArgumentError("shape sides must be positive");
            return Shape{m, n};
        };
        if (kd == "nc") {
            if (n < 1) throw ArgumentError("n must be positive");
            for (const auto& p : enumerate_nc(n)) {
                if (stop) break;
                send({{"index", seen}, {"cycles", p.to_string()}, {"class", "disc_nc"}, {"blocks", p.num_cycles()},
                      {"parity", is_even_cycles(p) ? "even" : "not-even"}});
            }
        } else if (kd == "snc" || kd == "pairings") {
            Shape s = shape();
            if (kd == "pairings" && (s.m % 2 || s.n % 2)) throw ArgumentError("pairings need both sides even");
            auto all = kd == "snc" ? enumerate_snc(s) : enumerate_annular_pairings(s);
            for (const auto& p : all) {
                if (stop) break;
                send(line_for(p, s, seen));
            }
        } else if (kd == "snc-k-alt") {
            Shape s = shape();
            if (k < 1) throw ArgumentError("k must be positive");
            Shape scaled{k * s.m, k * s.n};
            for (const auto& p : enumerate_snc_k_alt(s, k)) {
                if (stop) break;
                send(line_for(p, scaled, seen));
            }
        } else if (kd == "psnc") {
            Shape s = shape();
            for (const auto& x : enumerate_ps_nc(s)) {
                if (stop) break;
                bool joined = x.partition() != SetPartition::of_cycles(x.permutation());
                send({{"index", seen}, {"partition", x.partition().to_string()}, {"cycles", x.permutation().to_string()},
                      {"class", joined ? "joined" : "annular_nc"}});
            }
        } else {
            throw ArgumentError("unknown kind '" + kd + "' (nc, snc, psnc, pairings, snc-k-alt)");
        }
        if (count) *count = seen;
        return SOFREE_OK;
    });
}

int sofree_transform(const sofree_model* mh, const char* direction, int order, int cutoff, int verify_roundtrip,
                     char** out) {
    return guarded([&] {
        const Model& m = need(mh, "the");
        std::string dir = direction ? direction : "";
        if (dir != "m2c" && dir != "c2m") throw ArgumentError("direction must be m2c or c2m");
        if (order != 1 && order != 2) throw ArgumentError("order must be 1 or 2");
        if (cutoff < 1) throw ArgumentError("cutoff must be positive");
        if (order == 2 && cutoff < 2) throw ArgumentError("second order needs cutoff >= 2");
        if (cutoff > m.truncation()) throw ArgumentError("cutoff exceeds the model truncation");
        bool to_cumulants = dir == "m2c";

        json doc = head("transform");
        doc["direction"] = dir;
        doc["order"] = order;
        doc["cutoff"] = cutoff;
        doc["quantity"] = order == 1 ? (to_cumulants ? "kappa" : "phi") : (to_cumulants ? "kappa2" : "phi2");
        json entries = json::array();
        Table1 t1 = to_cumulants ? kappa_from_phi(m, cutoff) : phi_table(m, cutoff);
        Table2 t2;
        if (order == 1) {
            for (const auto& w : words_up_to(m, cutoff)) entries.push_back({{"word", m.word_text(w)}, {"value", to_wire(t1.at(w))}});
        } else {
            t2 = to_cumulants ? kappa2_from_phi(m, cutoff) : phi2_table(m, cutoff);
            for (const auto& [a, b] : word_pairs_up_to(m, cutoff))
                entries.push_back({{"left", m.word_text(a)}, {"right", m.word_text(b)}, {"value", to_wire(t2.at({a, b}))}});
        }
        doc["entries"] = entries;

        int status = SOFREE_OK;
        if (verify_roundtrip) {
            // Rebuild a model from the output side alone and transform back.
            std::unordered_map<Word, Rational, WordHash> f1, f2;
            Table1 first = order == 1 ? t1 : (to_cumulants ? kappa_from_phi(m, cutoff) : phi_table(m, cutoff));
            for (const auto& [w, v] : first)
                if (m.single_family(w)) f1[w] = v;
            if (order == 2) {
                for (const auto& [k, v] : t2)
                    if (m.single_family(k.first, k.second)) f2[pair_key(k.first, k.second)] = v;
            } else {
                for (const auto& [a, b] : word_pairs_up_to(m, cutoff))
                    if (m.single_family(a, b)) f2[pair_key(a, b)] = 0;
            }
            TableModel back(m.alphabet(), cutoff, !to_cumulants, std::move(f1), std::move(f2));
            back.set_tracial(m.tracial());
            std::string where;
            bool bad;
            if (order == 1)
                bad = to_cumulants ? mismatch(phi_table(m, cutoff), phi_table(back, cutoff), m, where)
                                   : mismatch(kappa_from_phi(m, cutoff), kappa_from_phi(back, cutoff), m, where);
            else
                bad = to_cumulants ? mismatch(phi2_table(m, cutoff), phi2_table(back, cutoff), m, where)
                                   : mismatch(kappa2_from_phi(m, cutoff), kappa2_from_phi(back, cutoff), m, where);
            doc["roundtrip"] = {{"pass", !bad}};
            if (bad) {
                doc["roundtrip"]["first_mismatch"] = where;
                status = SOFREE_CHECK_FAILED;
            }
        }
        emit(out, doc);
        return status;
    });
}

int sofree_square(const sofree_model* mh, const char* direction, int cutoff, char** out) {
    return guarded([&] {
        const Model& m = need(mh, "the");
        std::string dir = direction ? direction : "";
        if (dir != "forward" && dir != "inverse") throw ArgumentError("direction must be forward or inverse");
        if (cutoff < 2) throw ArgumentError("cutoff must be at least 2");
        json doc = head("square");
        doc["direction"] = dir;
        doc["cutoff"] = cutoff;
        if (dir == "forward") {
            std::string kind;
            auto det = determining_of(m, cutoff, kind);
            auto sq = square_cumulants(det);
            doc["kind"] = kind;
            doc["beta"] = determining_json(det);
            doc["square"] = {{"first", seq_json(sq.first, 1)}, {"second", grid_json(sq.second, cutoff)}};
            doc["square_model"] = square_model_json(sq);
        } else {
            int y = lone_selfadjoint(m);
            if (y < 0) throw ArgumentError("inverse needs a model with one self-adjoint letter");
            if (cutoff > m.truncation()) throw ArgumentError("cutoff exceeds the model truncation");
            SquareTables t;
            t.order = cutoff;
            t.first.assign(static_cast<std::size_t>(cutoff + 1), Rational(0));
            t.second = seq::make_grid(cutoff, cutoff);
            for (int n = 1; n <= cutoff; ++n) t.first[static_cast<std::size_t>(n)] = m.kappa(power(y, n));
            for (int s = 2; s <= cutoff; ++s)
                for (int p = 1; p < s; ++p)
                    t.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(s - p)] = m.kappa2(power(y, p), power(y, s - p));
            doc["beta"] = determining_json(determining_from_square(t));
        }
        emit(out, doc);
        return SOFREE_OK;
    });
}

int sofree_check(const char* target, const sofree_model* a, const sofree_model* b, int order, char** out) {
    return guarded([&] {
        std::string tg = target ? target : "";
        json doc = head("check");
        doc["target"] = tg;
        bool pass = true;
        if (tg == "series") {
            const Model& m = need(a, "the");
            if (order < 2) throw ArgumentError("cutoff must be at least 2");
            std::string kind;
            auto det = determining_of(m, order, kind);
            auto sq = square_cumulants(det);
            auto r1 = check_first_order_relation(sq.first, det.first, order);
            auto r2 = check_second_order_relation(sq.first, sq.second, det.second, order, order);
            pass = r1.is_zero() && r2.is_zero();
            doc["kind"] = kind;
            doc["cutoff"] = order;
            doc["first_residual"] = r1.to_json();
            doc["second_residual"] = r2.to_json();
        } else if (tg == "rdiag" || tg == "even") {
            const Model& m = need(a, "the");
            if (order < 1) throw ArgumentError("order must be positive");
            if (tg == "even" && lone_selfadjoint(m) < 0) throw ArgumentError("even needs one self-adjoint letter");
            auto v = tg == "even" ? verify_even(m, order) : verify_r_diagonal(m, order);
            pass = v.ok;
            doc["order"] = order;
            if (!v.ok) doc["violation"] = v.violation;
        } else if (tg == "mt1") {
            need(a, "the r");
            need(b, "the b");
            if (order < 1) throw ArgumentError("order must be positive");
            auto rep = check_mt1(a->m, b->m, order);
            pass = rep.ok;
            doc["order"] = order;
            doc["cumulants"] = rep.cumulants;
            doc["terms"] = rep.terms;
            doc["lemma_checks"] = rep.lemma_checks;
            doc["violations"] = rep.violations;
        } else if (tg == "examples") {
            int n = acceptance::criterion_count();
            if (order < 0 || order > n) throw ArgumentError("criterion id out of range");
            json crit = json::array();
            for (int id = 1; id <= n; ++id) {
                if (order != 0 && id != order) continue;
                auto c = acceptance::run_criterion(id);
                pass = pass && c.pass();
                crit.push_back(acceptance::to_json(c));
            }
            doc["criteria"] = crit;
        } else {
            throw ArgumentError("unknown check '" + tg + "' (series, rdiag, even, mt1, examples)");
        }
        doc["pass"] = pass;
        emit(out, doc);
        return pass ? SOFREE_OK : SOFREE_CHECK_FAILED;
    });
}

int sofree_render_svg(const char* permutation, int m, int n, char** out) {
    return guarded([&] {
        if (!permutation) throw ArgumentError("null permutation");
        if (m < 1 || n < 1) throw ArgumentError("shape sides must be positive");
        Permutation p;
        try {
            p = Permutation::parse(permutation, m + n);
        } catch (const Error& e) {
            throw ArgumentError(e.what());
        }
        if (!out) throw ArgumentError("output pointer is null");
        *out = dup(render_svg(p, Shape{m, n}));
        return SOFREE_OK;
    });
}

int sofree_acceptance_count(void) { return acceptance::criterion_count(); }

int sofree_acceptance_run(int id, char** out) {
    return guarded([&] {
        if (id < 1 || id > acceptance::criterion_count()) throw ArgumentError("criterion id out of range");
        auto c = acceptance::run_criterion(id);
        emit(out, acceptance::to_json(c));
        return c.pass() ? SOFREE_OK : SOFREE_CHECK_FAILED;
    });
}

}  // extern "C"
