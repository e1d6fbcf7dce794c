// fkcalc: command-line front end for the F_K engine.

#include "fk/expansions/mmr.hpp"
#include "fk/expansions/radial.hpp"
#include "fk/inversion/search.hpp"
#include "fk/io/json_io.hpp"
#include "fk/io/tsv.hpp"
#include "fk/jones/habiro.hpp"
#include "fk/jones/tail.hpp"
#include "fk/slopes/table.hpp"
#include "fk/statesum/inverted.hpp"
#include "fk/statesum/stratified.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fk;

constexpr int kFormatVersion = 1;

// exit codes: mathematical negatives first, then operational failures
enum Exit : int {
    Ok = 0,
    Usage = 1,          // CLI11 parse errors
    BadInput = 2,       // malformed braid, datum or file
    NotNice = 3,        // no nice datum on the given word
    NotStabilized = 4,  // stratified or tail coefficients did not settle, or a limit diverges
    Truncation = 5,     // window or order too small for the request
    Budget = 6,         // search or state budget exhausted
    Internal = 7,
};

struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

struct Source {
    std::string braid;
    int strands = 0;
    std::string tsv;
    std::string row;
    std::string datum;
    bool datum_search = false;
};

struct Common {
    bool json = false;
    std::string out;
    int threads = 1;
    std::string sign_rule = "continuation-open-cut";
    std::uint64_t seed = 1;
};

struct Resolved {
    std::string name;
    BraidWord braid;
    std::optional<std::string> datum;
};

Resolved resolve(const Source& s) {
    Resolved r;
    try {
        if (!s.tsv.empty()) {
            if (s.row.empty()) throw ExitError(BadInput, "--tsv needs --row");
            BraidRecord rec = find_record(read_records(s.tsv), s.row);
            r.name = rec.name;
            r.braid = parse_braid(rec.braid, rec.strands);
            r.datum = rec.datum;
        } else {
            r.braid = parse_braid(s.braid, s.strands);
            r.name = s.braid.empty() ? "unknot" : s.braid;
        }
    } catch (const ExitError&) {
        throw;
    } catch (const std::exception& e) {
        throw ExitError(BadInput, e.what());
    }
    if (!s.datum.empty()) r.datum = s.datum;
    return r;
}

void add_source(CLI::App* app, Source& s, bool with_datum) {
    app->add_option("--braid", s.braid, "braid word, e.g. \"1 -2 1 -2\"");
    app->add_option("--strands", s.strands, "strand count (default: largest index + 1)");
    app->add_option("--tsv", s.tsv, "fixture file with name, strands, braid, datum columns");
    app->add_option("--row", s.row, "row name in the fixture file");
    if (with_datum) {
        app->add_option("--datum", s.datum, "datum sign string in traversal order");
        app->add_flag("--datum-search", s.datum_search, "search for a nice datum by braid moves");
    }
}

Json metadata(const std::string& command, const std::vector<std::string>& argv, const Common& c) {
    return {{"tool", "fkcalc"}, {"format_version", kFormatVersion}, {"command", command}, {"argv", argv},
            {"sign_rule", c.sign_rule}, {"seed", c.seed}, {"threads", c.threads}};
}

void emit(const Common& c, const Json& meta, const Json& body, const std::string& text) {
    std::ostringstream os;
    if (c.json) {
        Json doc = {{"metadata", meta}, {"result", body}};
        os << doc.dump(2) << '\n';
    } else {
        os << text;
    }
    if (c.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ExitError(BadInput, "cannot write " + c.out);
    f << os.str();
}

struct NiceChoice {
    BraidWord braid;
    InversionDatum datum;
    NicenessCertificate cert;
    Json provenance;
};

NiceChoice choose_datum(const Resolved& r, const Source& s, const Common& c) {
    NiceChoice ch;
    if (r.datum) {
        const DiagramGraph g = diagram(r.braid);
        try {
            ch.datum = datum_from_string(g, *r.datum);
        } catch (const std::exception& e) {
            throw ExitError(BadInput, e.what());
        }
        ch.braid = r.braid;
        ch.cert = niceness_check(g, ch.datum);
        if (!ch.cert.nice) throw ExitError(NotNice, "the given datum is not nice");
        ch.provenance = {{"source", "given"}};
        return ch;
    }
    SearchBudget budget;
    budget.walk.seed = c.seed;
    budget.walk.iterations = s.datum_search ? 5000 : 0;
    budget.max_words = s.datum_search ? 5000 : 1;
    SearchOutcome o = search_datum(r.braid, budget);
    if (!o.result) {
        if (s.datum_search) throw ExitError(Budget, "no nice datum within the search budget");
        throw ExitError(NotNice, "no nice datum on this word; try --datum-search");
    }
    ch.braid = o.result->braid;
    ch.datum = o.result->datum;
    ch.cert = o.result->certificate;
    ch.provenance = {{"source", "search"}, {"seed", o.result->seed}, {"word_index", o.result->word_index},
                     {"words_tried", o.stats.words_tried}, {"data_tried", o.stats.data_tried}};
    return ch;
}

FKResult run_fk(const NiceChoice& ch, int x_order, const Common& c) {
    return inverted_sum(diagram(ch.braid), ch.datum, x_order, parse_sign_rule(c.sign_rule), c.threads);
}

std::string fk_text(const FKResult& r) {
    std::ostringstream os;
    os << "braid: " << r.braid << "\ndatum: " << r.datum << "\nd = " << r.d << ", ell = " << r.ell << ", s = " << r.s << "\n";
    os << "F = " << pretty_x(r.normalized) << "\n";
    return os.str();
}

StratifiedResult run_stratified(const Resolved& r, int x_order, int q_order2, int max_weight, const Common& c) {
    StratifiedOptions o;
    o.x_order = x_order;
    o.q_order2 = q_order2;
    o.max_weight = max_weight;
    try {
        return stratified_sum(diagram(r.braid), o, parse_sign_rule(c.sign_rule));
    } catch (const StratumBudgetError& e) {
        throw ExitError(Budget, e.what());
    }
}

std::string stratified_text(const StratifiedResult& r) {
    std::ostringstream os;
    os << "genus " << r.genus << ", s = " << r.s << ", weights 0.." << r.max_weight << "\n";
    os << "stratum 0: " << pretty_x(r.strata.at(0)) << "\n";
    for (const auto& c : r.unnormalized) os << "z_" << c.index << " [" << convergence_name(c.status) << "] " << pretty(c.value) << "\n";
    for (const auto& c : r.normalized) {
        os << "f_" << c.index << " [" << convergence_name(c.status) << "] " << pretty(c.value) << "\n";
        if (c.even) os << "  even partials " << pretty(*c.even) << "\n  odd partials  " << pretty(*c.odd) << "\n";
    }
    return os.str();
}

bool all_stable(const StratifiedResult& r) {
    for (const auto& c : r.normalized)
        if (c.status != Convergence::Stable) return false;
    return true;
}

std::string radial_text(const std::vector<RadialEstimate>& v) {
    std::ostringstream os;
    os.precision(8);
    for (const auto& e : v) {
        os << "k=" << e.k << ": ";
        if (e.divergent)
            os << "divergent";
        else if (!e.sufficient)
            os << "insufficient q-order";
        else
            os << e.value << " +- " << e.spread;
        os << "\n";
    }
    return os.str();
}

std::string mmr_text(const MMRData& m, bool nonnegative) {
    std::ostringstream os;
    for (std::size_t j = 0; j < m.numerators.size(); ++j)
        os << "P^(" << j << ")" << (m.p > 1 ? "_" + std::to_string(m.p) : "") << " = " << pretty_cyc(m.numerators[j], nonnegative)
           << (m.verified[j] ? "" : "   [symmetry completion not verified beyond support]") << "\n";
    return os.str();
}

int minimal_mmr_x_order(const AlexanderPoly& delta, int p, int J) {
    const int d = delta.d();
    // full verification: the product window reaches one past the support
    return (2 * J + 1) * p * d + ((2 * J + 1) * p - 1) * d + 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"F_K series, inversion data and derived knot invariants"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "emit JSON with a metadata block");
    app.add_option("--out", common.out, "output file (default stdout)");
    app.add_option("--threads", common.threads, "worker threads for the inverted state sum");
    app.add_option("--sign-rule", common.sign_rule, "multicycle connection rule");
    app.add_option("--seed", common.seed, "random walk seed");

    Source src;
    int x_order = 5, q_order = 20, max_weight = 20, colors = 6, h_order = 1, root = 1, k_max = 2, coeff_index = 0;
    int max_period = 12;
    std::optional<int> start_index;
    bool stratified = false, nonneg = false, from_habiro = false, normalized_coeff = false;
    std::string input, table;
    long iterations = 1000, max_words = 1000;

    auto* fk_cmd = app.add_subcommand("fk", "F_K series by the inverted or stratified state sum");
    add_source(fk_cmd, src, true);
    fk_cmd->add_option("--x-order", x_order, "coefficients f_0 .. f_{N}");
    fk_cmd->add_flag("--stratified", stratified, "all-minus stratified sum for strongly quasinegative words");
    fk_cmd->add_option("--q-order", q_order, "q-order of stratified coefficients");
    fk_cmd->add_option("--max-weight", max_weight, "largest stratum weight");

    auto* pipe_cmd = app.add_subcommand("pipeline", "F_K and all downstream invariants with cross-checks");
    add_source(pipe_cmd, src, true);
    pipe_cmd->add_option("--x-order", x_order, "x-order of the series");
    pipe_cmd->add_flag("--stratified", stratified, "stratified route");
    pipe_cmd->add_option("--q-order", q_order, "q-order of stratified coefficients");
    pipe_cmd->add_option("--max-weight", max_weight, "largest stratum weight");
    pipe_cmd->add_option("--k", k_max, "radial derivative order");

    auto* jones_cmd = app.add_subcommand("jones", "colored Jones polynomials J_0 .. J_N");
    add_source(jones_cmd, src, false);
    jones_cmd->add_option("--colors", colors, "largest color N");

    auto* habiro_cmd = app.add_subcommand("habiro", "Habiro coefficients a_0 .. a_N");
    add_source(habiro_cmd, src, false);
    habiro_cmd->add_option("--up-to", colors, "largest index N");

    auto* tail_cmd = app.add_subcommand("tail", "tail and stability series of the colored Jones function");
    add_source(tail_cmd, src, false);
    tail_cmd->add_option("--colors", colors, "largest color used");
    tail_cmd->add_option("--q-order", q_order, "q-order");
    tail_cmd->add_option("--x-order", x_order, "layers of the stability series");

    auto* mmr_cmd = app.add_subcommand("mmr", "MMR numerators at q = 1 or at a root of unity");
    add_source(mmr_cmd, src, true);
    mmr_cmd->add_option("--order", h_order, "largest h-order J");
    mmr_cmd->add_option("--root", root, "root order p");
    mmr_cmd->add_flag("--nonnegative", nonneg, "print only nonnegative x-powers");
    mmr_cmd->add_flag("--habiro", from_habiro, "P^(1) from Habiro coefficients instead of F_K");
    mmr_cmd->add_option("--x-order", x_order, "override the x-order of the series (default: what the layers need)");

    auto* hopf_cmd = app.add_subcommand("hopf", "Hopf invariant from Habiro coefficients");
    add_source(hopf_cmd, src, false);

    auto* radial_cmd = app.add_subcommand("radial", "radial limits of a stratified coefficient");
    add_source(radial_cmd, src, false);
    radial_cmd->add_option("--k", k_max, "largest derivative order");
    radial_cmd->add_option("--coefficient", coeff_index, "coefficient index");
    radial_cmd->add_flag("--normalized", normalized_coeff, "use f_k of the normalized series instead of the unnormalized z_k");
    radial_cmd->add_option("--q-order", q_order, "q-order of the coefficient");
    radial_cmd->add_option("--max-weight", max_weight, "largest stratum weight");

    auto* slopes_cmd = app.add_subcommand("slopes", "quasi-polynomial fits of q-degree sequences");
    add_source(slopes_cmd, src, true);
    slopes_cmd->add_option("--input", input, "series JSON written by fk --json");
    slopes_cmd->add_option("--x-order", x_order, "x-order when computing from a braid");
    slopes_cmd->add_option("--max-period", max_period, "largest period tried");
    slopes_cmd->add_option("--start", start_index, "first x-index of the fitted sequences");
    slopes_cmd->add_option("--table", table, "reference slopes TSV to diff against");

    auto* search_cmd = app.add_subcommand("search", "random walk search for a braid word with a nice datum");
    add_source(search_cmd, src, false);
    search_cmd->add_option("--iterations", iterations, "walk iterations");
    search_cmd->add_option("--max-words", max_words, "braid words examined");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }
    std::vector<std::string> args(argv + 1, argv + argc);

    try {
        try {
            parse_sign_rule(common.sign_rule);
        } catch (const std::exception& e) {
            throw ExitError(BadInput, e.what());
        }
        CLI::App* cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();
        const Json meta = metadata(name, args, common);

        if (name == "fk") {
            Resolved r = resolve(src);
            if (stratified) {
                StratifiedResult s = run_stratified(r, x_order, 2 * q_order, max_weight, common);
                emit(common, meta, stratified_to_json(s), stratified_text(s));
                return all_stable(s) ? Ok : NotStabilized;
            }
            NiceChoice ch = choose_datum(r, src, common);
            FKResult f = run_fk(ch, x_order, common);
            Json body = fk_to_json(f);
            body["datum_provenance"] = ch.provenance;
            body["min_degree"] = to_string(ch.cert.min_degree);
            emit(common, meta, body, fk_text(f));
            return Ok;
        }

        if (name == "jones" || name == "habiro" || name == "hopf") {
            Resolved r = resolve(src);
            const AlexanderPoly delta = alexander(r.braid);
            const int N = name == "hopf" ? 2 * delta.d() : colors;
            JonesTable J = jones_table(r.braid, N);
            Json body;
            std::ostringstream text;
            if (name == "jones") {
                Json t = Json::array();
                for (int n = 0; n <= N; ++n) {
                    t.push_back({{"n", n}, {"J", laurent_to_json(J.values[n])}});
                    text << "J_" << n << " = " << pretty(J.values[n]) << "\n";
                }
                body = {{"jones", t}};
            } else {
                HabiroData h;
                try {
                    h = habiro_coefficients(J, N);
                } catch (const DivisionError& e) {
                    throw ExitError(Internal, e.what());
                }
                if (name == "habiro") {
                    Json t = Json::array();
                    for (int n = 0; n <= N; ++n) {
                        t.push_back({{"n", n}, {"a", laurent_to_json(h.coeffs[n])}, {"da_dq_at_1", to_string(h.derivs_at_one[n])}});
                        text << "a_" << n << " = " << pretty(h.coeffs[n]) << "   a'(1) = " << to_string(h.derivs_at_one[n]) << "\n";
                    }
                    body = {{"habiro", t}};
                } else {
                    HopfResult hr;
                    try {
                        hr = hopf(delta, h);
                    } catch (const std::domain_error& e) {
                        throw ExitError(BadInput, e.what());
                    }
                    Json terms = Json::array();
                    for (const auto& t : hr.terms) terms.push_back(to_string(t));
                    body = {{"genus", hr.genus}, {"terms", terms}, {"lambda", to_string(hr.lambda)}, {"ell", to_string(hr.ell)}};
                    text << "genus " << hr.genus << "\nterms";
                    for (const auto& t : hr.terms) text << " " << to_string(t);
                    text << "\nlambda = " << to_string(hr.lambda) << "\nell = g - lambda = " << to_string(hr.ell) << "\n";
                    if (denominator(hr.lambda) != 1) throw ExitError(Internal, "non-integral Hopf invariant");
                }
            }
            emit(common, meta, body, text.str());
            return Ok;
        }

        if (name == "tail") {
            Resolved r = resolve(src);
            JonesTable J = jones_table(r.braid, colors);
            TailResult t = tail(J, 2 * q_order);
            StabilitySeries st = stability_series(J, x_order, 2 * q_order);
            Json layers = Json::array();
            std::ostringstream text;
            text << "tail " << (t.stabilized ? "stabilized from n = " + std::to_string(t.stabilized_from) : "not stabilized") << ": "
                 << pretty(t.tail) << "\n";
            for (std::size_t k = 0; k < st.coeffs.size(); ++k) {
                layers.push_back({{"k", k}, {"stabilized", static_cast<bool>(st.stabilized[k])}, {"value", trunc_to_json(st.coeffs[k])}});
                text << "Phi_" << k << " = " << pretty(st.coeffs[k]) << "\n";
            }
            emit(common, meta,
                 {{"tail", trunc_to_json(t.tail)}, {"stabilized", t.stabilized}, {"stabilized_from", t.stabilized_from}, {"shifts", t.shifts},
                  {"stability_series", layers}},
                 text.str());
            return t.stabilized ? Ok : NotStabilized;
        }

        if (name == "mmr") {
            Resolved r = resolve(src);
            const AlexanderPoly delta = alexander(r.braid);
            MMRData m;
            if (from_habiro) {
                const int N = 2 * delta.d() + 2;
                m = mmr_from_habiro(habiro_coefficients(jones_table(r.braid, N), N), delta);
            } else {
                NiceChoice ch = choose_datum(r, src, common);
                const int need = minimal_mmr_x_order(delta, root, h_order);
                const int N = app.get_subcommand("mmr")->count("--x-order") ? x_order : need;
                FKResult f = run_fk(ch, N, common);
                try {
                    m = mmr_at_root(f, root, h_order, delta);
                } catch (const MMRWindowError& e) {
                    throw ExitError(Truncation, e.what());
                } catch (const MMRMismatchError& e) {
                    throw ExitError(NotStabilized, e.what());
                }
            }
            emit(common, meta, mmr_to_json(m), mmr_text(m, nonneg));
            return Ok;
        }

        if (name == "radial") {
            Resolved r = resolve(src);
            StratifiedResult s = run_stratified(r, coeff_index + 1, 2 * q_order, max_weight, common);
            const auto& list = normalized_coeff ? s.normalized : s.unnormalized;
            if (coeff_index >= static_cast<int>(list.size())) throw ExitError(Truncation, "coefficient index beyond the computed x-order");
            const StratifiedCoefficient& c = list[coeff_index];
            auto est = radial_limits(c.value, k_max);
            bool divergent = false, sufficient = true;
            for (const auto& e : est) {
                divergent = divergent || e.divergent;
                sufficient = sufficient && e.sufficient;
            }
            Json body = {{"coefficient", coeff_index}, {"status", convergence_name(c.status)}, {"series", trunc_to_json(c.value)}, {"limits", radial_to_json(est)}};
            emit(common, meta, body, (normalized_coeff ? "f_" : "z_") + std::to_string(coeff_index) + " = " + pretty(c.value) + "\n" + radial_text(est));
            if (c.status != Convergence::Stable || divergent) return NotStabilized;
            return sufficient ? Ok : Truncation;
        }

        if (name == "slopes") {
            FitOptions fo;
            fo.max_period = max_period;
            fo.start_index = start_index;
            std::vector<std::pair<std::string, FSeries>> batch;
            if (!input.empty()) {
                std::ifstream in(input);
                if (!in) throw ExitError(BadInput, "cannot open " + input);
                Json doc;
                try {
                    doc = Json::parse(in);
                } catch (const std::exception& e) {
                    throw ExitError(BadInput, e.what());
                }
                auto add = [&](const Json& j, const std::string& fallback) {
                    const Json& res = j.contains("result") ? j.at("result") : j;
                    batch.emplace_back(res.value("name", res.value("braid", fallback)), series_from_json(res.at("normalized")));
                };
                if (doc.is_array())
                    for (std::size_t k = 0; k < doc.size(); ++k) add(doc[k], "row" + std::to_string(k));
                else
                    add(doc, "input");
            } else {
                Resolved r = resolve(src);
                NiceChoice ch = choose_datum(r, src, common);
                batch.emplace_back(r.name, run_fk(ch, x_order, common).normalized);
            }
            auto rows = slope_table(batch, fo);
            Json body = Json::array();
            for (const auto& row : rows) body.push_back({{"knot", row.name}, {"min", fit_to_json(row.min_fit)}, {"max", fit_to_json(row.max_fit)}});
            std::string text = slope_table_tsv(rows);
            int code = Ok;
            for (const auto& row : rows)
                if (!row.min_fit.found || !row.max_fit.found) code = NotStabilized;
            if (!table.empty()) {
                std::ifstream in(table);
                if (!in) throw ExitError(BadInput, "cannot open " + table);
                auto diffs = diff_slopes(rows, parse_slope_reference(in));
                Json dj = Json::array();
                std::ostringstream dt;
                for (const auto& d : diffs) {
                    dj.push_back({{"knot", d.name}, {"computed", format_slopes(d.computed)}, {"reference", format_slopes(d.reference)}, {"match", d.matches()}});
                    dt << "# " << d.name << (d.matches() ? " matches " : " differs: reference ") << format_slopes(d.reference) << "\n";
                    if (!d.matches()) code = NotStabilized;
                }
                body = {{"rows", body}, {"diff", dj}};
                text += dt.str();
            }
            emit(common, meta, body, text);
            return code;
        }

        if (name == "search") {
            Resolved r = resolve(src);
            SearchBudget b;
            b.walk.seed = common.seed;
            b.walk.iterations = static_cast<int>(iterations);
            b.max_words = max_words;
            SearchOutcome o = search_datum(r.braid, b);
            Json stats = {{"words_tried", o.stats.words_tried}, {"data_tried", o.stats.data_tried}};
            if (!o.result) {
                emit(common, meta, {{"found", false}, {"stats", stats}}, "no nice datum found\n");
                return Budget;
            }
            const DiagramGraph g = diagram(o.result->braid);
            const std::string ds = datum_to_string(g, o.result->datum);
            BraidRecord rec{r.name, o.result->braid.strands, format_braid(o.result->braid), ds};
            emit(common, meta,
                 {{"found", true}, {"record", emit_record(rec)}, {"braid", rec.braid}, {"datum", ds}, {"word_index", o.result->word_index},
                  {"min_degree", to_string(o.result->certificate.min_degree)}, {"stats", stats}},
                 emit_record(rec) + "\n");
            return Ok;
        }

        if (name == "pipeline") {
            Resolved r = resolve(src);
            Json report = {{"knot", r.name}, {"braid", format_braid(r.braid)}};
            std::ostringstream text;
            text << "knot " << r.name << "  braid " << format_braid(r.braid) << "\n";
            const AlexanderPoly delta = alexander(r.braid);
            const int g = delta.d();
            report["alexander"] = {{"provenance", "jones.alexander"}, {"value", pretty(delta.poly, "t", false)}, {"genus_bound", g}};
            text << "[jones.alexander] Delta = " << pretty(delta.poly, "t", false) << "\n";
            auto stage = [&](const std::string& key, const std::function<void()>& f) {
                try {
                    f();
                } catch (const std::exception& e) {
                    report[key] = {{"error", e.what()}};
                    text << "[" << key << "] failed: " << e.what() << "\n";
                }
            };
            std::optional<HabiroData> habiro;
            stage("habiro", [&] {
                const int N = 2 * g + 2;
                habiro = habiro_coefficients(jones_table(r.braid, N), N);
                report["habiro"] = {{"provenance", "jones.habiro_coefficients"}, {"up_to", N}};
            });
            std::optional<Rational> ell_hopf;
            stage("hopf", [&] {
                if (!habiro) throw std::runtime_error("needs Habiro coefficients");
                HopfResult hr = hopf(delta, *habiro);
                Json terms = Json::array();
                for (const auto& t : hr.terms) terms.push_back(to_string(t));
                report["hopf"] = {{"provenance", "expansions.hopf"}, {"genus", hr.genus}, {"terms", terms}, {"lambda", to_string(hr.lambda)},
                                  {"ell", to_string(hr.ell)}};
                ell_hopf = hr.ell;
                text << "[expansions.hopf] g = " << hr.genus << ", lambda = " << to_string(hr.lambda) << ", ell = g - lambda = " << to_string(hr.ell)
                     << "\n  terms";
                for (const auto& t : hr.terms) text << " " << to_string(t);
                text << "\n";
            });
            stage("mmr_habiro", [&] {
                if (!habiro) throw std::runtime_error("needs Habiro coefficients");
                MMRData m = mmr_from_habiro(*habiro, delta);
                report["mmr_habiro"] = {{"provenance", "expansions.mmr_from_habiro"}, {"P1", cyc_laurent_to_json(m.numerators[1], 1)}};
                text << "[expansions.mmr_from_habiro] P^(1) = " << pretty_cyc(m.numerators[1]) << "\n";
            });
            if (stratified) {
                stage("stratified", [&] {
                    StratifiedResult s = run_stratified(r, x_order, 2 * q_order, max_weight, common);
                    report["stratified"] = stratified_to_json(s);
                    report["stratified"]["provenance"] = "statesum.stratified_sum";
                    text << "[statesum.stratified_sum]\n" << stratified_text(s);
                    if (!s.unnormalized.empty()) {
                        auto est = radial_limits(s.unnormalized[0].value, k_max);
                        report["radial"] = {{"provenance", "expansions.radial_limits"}, {"limits", radial_to_json(est)}};
                        text << "[expansions.radial_limits] z_0\n" << radial_text(est);
                    }
                });
                stage("tail", [&] {
                    JonesTable J = jones_table(r.braid, 10);
                    TailResult t = tail(J, 2 * q_order);
                    report["tail"] = {{"provenance", "jones.tail"}, {"stabilized", t.stabilized}, {"value", trunc_to_json(t.tail)}};
                    text << "[jones.tail] " << pretty(t.tail) << "\n";
                });
            } else {
                stage("fk", [&] {
                    NiceChoice ch = choose_datum(r, src, common);
                    const int N = std::max(x_order, minimal_mmr_x_order(delta, 1, 1));
                    FKResult f = run_fk(ch, N, common);
                    report["fk"] = fk_to_json(f);
                    report["fk"]["provenance"] = "statesum.inverted_sum";
                    text << "[statesum.inverted_sum] " << fk_text(f);
                    text << "[inversion.ell] ell = " << ell(diagram(ch.braid), ch.datum) << "\n";
                    if (ell_hopf)
                        text << "[check] ell from the series " << f.ell << (Rational(f.ell) == *ell_hopf ? " equals" : " differs from")
                             << " ell from Habiro\n";
                    MMRData m = mmr_from_fk(f, 1, delta);
                    report["mmr_fk"] = mmr_to_json(m);
                    report["mmr_fk"]["provenance"] = "expansions.mmr_from_fk";
                    text << "[expansions.mmr_from_fk]\n" << mmr_text(m, false);
                    auto rows = slope_table({{r.name, f.normalized}});
                    report["slopes"] = {{"provenance", "slopes.fit"}, {"min", fit_to_json(rows[0].min_fit)}, {"max", fit_to_json(rows[0].max_fit)}};
                    text << "[slopes.fit] slopes " << (rows[0].slopes().empty() ? "none: " + rows[0].max_fit.reason : format_slopes(rows[0].slopes())) << "\n";
                });
            }
            emit(common, meta, report, text.str());
            return Ok;
        }
        throw ExitError(Usage, "unknown command");
    } catch (const ExitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const NotNiceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NotNice;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Internal;
    }
}
