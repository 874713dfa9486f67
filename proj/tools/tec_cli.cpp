#include "tec_cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tec/covariance.hpp"
#include "tec/criteria.hpp"
#include "tec/datasets.hpp"
#include "tec/dominance.hpp"
#include "tec/dsep.hpp"
#include "tec/error.hpp"
#include "tec/estimators.hpp"
#include "tec/graph.hpp"
#include "tec/simulate.hpp"
#include "tec/variable_set.hpp"

namespace tec::cli {
namespace {

using json = nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Doubles enter reports rounded to 12 significant digits; non-finite
/// values are rejected rather than serialized.
double jnum(double v) {
    if (!std::isfinite(v)) throw NumericError("non-finite value in report");
    return std::strtod(fmt12(v).c_str(), nullptr);
}

VariableSet split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss{text};
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return VariableSet(std::move(out));
}

std::vector<int> split_sizes(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::stringstream ss{text};
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int n = std::stoi(item, &used);
            if (used != item.size() || n < 2) throw std::invalid_argument(item);
            out.push_back(n);
        } catch (const std::exception&) {
            throw Error("bad sample size '" + item + "' in --sizes");
        }
    }
    if (out.empty()) throw Error("--sizes must name at least one sample size");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DsepEngine engine_from(const std::string& name) {
    return name == "oracle" ? DsepEngine::oracle : DsepEngine::fast;
}

/// Everything a subcommand reads once flag parsing is done.
struct Opts {
    std::string graph_path, cov_path, dataset;
    std::string engine = "fast";
    bool json_out = false;

    std::string a, b, given;
    std::string criterion, treatment, outcome;
    std::string adjust, fd_set, instrument;
    int n = 0;
    double tau = 0.0;
    unsigned max_size = 4;
    std::vector<std::string> strategies;
    std::string sizes = "20,50,100,200";
    int reps = 1000;
    std::uint64_t seed = 20121117ULL;
    std::string raw_out;
    std::string name, format = "human";
};

struct Loaded {
    std::optional<PathDiagram> graph;
    std::optional<CovarianceMatrix> cov;
    std::vector<std::string> warnings;
    json inputs = json::object();
};

Loaded load_inputs(const Opts& o) {
    Loaded l;
    if (!o.dataset.empty()) {
        EmbeddedDataset d = embedded_dataset(o.dataset);
        l.cov = std::move(d.covariance);
        l.graph = std::move(d.graph);
        l.warnings.push_back("dataset " + o.dataset + ": " + d.notes);
        l.inputs["dataset"] = o.dataset;
    }
    if (!o.graph_path.empty()) {
        l.graph = PathDiagram::parse(read_file(o.graph_path));
        l.inputs["graph"] = o.graph_path;
    }
    if (!o.cov_path.empty()) {
        l.cov = CovarianceMatrix::from_csv(read_file(o.cov_path));
        l.inputs["cov"] = o.cov_path;
    }
    return l;
}

const PathDiagram& require_graph(const Loaded& l) {
    if (!l.graph) throw CLI::RequiredError("--graph or --dataset (with a bundled diagram)");
    return *l.graph;
}

const CovarianceMatrix& require_cov(const Loaded& l) {
    if (!l.cov) throw CLI::RequiredError("--cov or --dataset");
    return *l.cov;
}

json report_skeleton(const std::string& command, const Loaded& l) {
    json r;
    r["command"] = command;
    r["inputs"] = l.inputs;
    r["certificates"] = json::array();
    r["estimates"] = json::array();
    r["dominance"] = json::array();
    r["warnings"] = l.warnings;
    return r;
}

json certificate_json(const CriterionCertificate& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["treatment"] = c.treatment;
    j["outcome"] = c.outcome;
    j["set"] = c.primary_set.members();
    j["instrument"] = c.instrument ? json(*c.instrument) : json(nullptr);
    j["conditioning_set"] =
        c.conditioning_set ? json(c.conditioning_set->members()) : json(nullptr);
    json conds = json::array();
    for (const auto& cond : c.conditions)
        conds.push_back({{"label", cond.label}, {"satisfied", cond.satisfied}});
    j["conditions"] = std::move(conds);
    j["notes"] = c.notes;
    j["minimal"] = c.minimal;
    j["valid"] = c.valid();
    return j;
}

json estimate_json(const EstimateReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["tau_hat"] = jnum(r.tau_hat);
    j["avar"] = jnum(r.avar);
    j["n_times_avar"] = jnum(r.n_times_avar);
    j["finite_var"] = r.finite_var ? json(jnum(*r.finite_var)) : json(nullptr);
    j["n"] = r.n;
    json sets;
    sets["set"] = r.set.members();
    sets["instrument"] = r.instrument ? json(*r.instrument) : json(nullptr);
    j["sets"] = std::move(sets);
    return j;
}

json dominance_json(const DominanceVerdict& v) {
    json j;
    j["better"] = v.better.describe();
    j["worse"] = v.worse.describe();
    j["basis"] = to_string(v.basis);
    json pre = json::array();
    for (const auto& p : v.preconditions)
        pre.push_back({{"statement", p.statement}, {"holds", p.holds}});
    j["preconditions"] = std::move(pre);
    return j;
}

void print_warnings(std::ostream& out, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) out << "warning: " << w << "\n";
}

void print_certificate(std::ostream& out, const CriterionCertificate& c) {
    out << "criterion: " << to_string(c.kind) << "\n"
        << "treatment: " << c.treatment << "\n"
        << "outcome:   " << c.outcome << "\n";
    if (c.instrument) out << "instrument: " << *c.instrument << "\n";
    if (c.conditioning_set)
        out << "conditioning set: " << c.conditioning_set->describe() << "\n";
    else
        out << "set: " << c.primary_set.describe() << "\n";
    out << "valid: " << (c.valid() ? "yes" : "no") << "\n";
    for (const auto& cond : c.conditions)
        out << "  [" << (cond.satisfied ? "ok" : "fail") << "] " << cond.label << "\n";
    for (const auto& note : c.notes) out << "note: " << note << "\n";
}

void print_estimate(std::ostream& out, const EstimateReport& r) {
    Strategy s;
    s.kind = r.kind;
    s.set = r.set;
    s.instrument = r.instrument;
    out << "strategy:     " << s.describe() << "\n"
        << "tau_hat:      " << fmt12(r.tau_hat) << "\n"
        << "avar:         " << fmt12(r.avar) << "\n"
        << "n_times_avar: " << fmt12(r.n_times_avar) << "\n";
    if (r.finite_var) out << "finite_var:   " << fmt12(*r.finite_var) << "\n";
    out << "n:            " << r.n << "\n";
    if (r.tau_used && r.kind == EstimatorKind::conditional_iv)
        out << "tau_used:     " << fmt12(*r.tau_used)
            << (r.tau_supplied ? " (supplied)" : " (plug-in)") << "\n";
    print_warnings(out, r.warnings);
}

int emit(std::ostream& out, const Opts& o, const json& report,
         const std::vector<std::string>& warnings,
         const std::function<void(std::ostream&)>& human) {
    if (o.json_out) {
        out << report.dump(2) << "\n";
    } else {
        human(out);
        print_warnings(out, warnings);
    }
    return 0;
}

// ---------------------------------------------------------------- dsep

int cmd_dsep(const Opts& o, std::ostream& out) {
    Loaded l = load_inputs(o);
    const PathDiagram& g = require_graph(l);
    VariableSet a = split_names(o.a), b = split_names(o.b), given = split_names(o.given);
    bool sep = d_separated(g, a, b, given, engine_from(o.engine));

    json report = report_skeleton("dsep", l);
    report["inputs"]["a"] = a.members();
    report["inputs"]["b"] = b.members();
    report["inputs"]["given"] = given.members();
    report["d_separated"] = sep;
    return emit(out, o, report, l.warnings, [&](std::ostream& os) {
        os << "d-separated: " << (sep ? "true" : "false") << "\n";
    });
}

// ---------------------------------------------------------------- check

CriterionCertificate run_check(const PathDiagram& g, const Opts& o, const CLI::App& sub) {
    CriterionKind kind = criterion_from_string(o.criterion);
    DsepEngine engine = engine_from(o.engine);
    switch (kind) {
        case CriterionKind::back_door:
            if (sub.count("--adjust") == 0)
                throw CLI::RequiredError("--adjust (use --adjust \"\" for the empty set)");
            return check_back_door(g, o.treatment, o.outcome, split_names(o.adjust), engine);
        case CriterionKind::conditional_iv:
            if (o.instrument.empty()) throw CLI::RequiredError("--instrument");
            if (sub.count("--adjust") == 0)
                throw CLI::RequiredError("--adjust (use --adjust \"\" for the empty set)");
            return check_conditional_iv(g, o.treatment, o.outcome, o.instrument,
                                        split_names(o.adjust), engine);
        case CriterionKind::front_door:
            if (sub.count("--set") == 0) throw CLI::RequiredError("--set");
            return check_front_door(g, o.treatment, o.outcome, split_names(o.fd_set), engine);
    }
    throw Error("unknown criterion");
}

int cmd_check(const Opts& o, const CLI::App& sub, std::ostream& out) {
    Loaded l = load_inputs(o);
    CriterionCertificate cert = run_check(require_graph(l), o, sub);

    json report = report_skeleton("check", l);
    report["inputs"]["criterion"] = o.criterion;
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["certificates"].push_back(certificate_json(cert));
    return emit(out, o, report, l.warnings,
                [&](std::ostream& os) { print_certificate(os, cert); });
}

// ------------------------------------------------------------- enumerate

int cmd_enumerate(const Opts& o, std::ostream& out) {
    Loaded l = load_inputs(o);
    const PathDiagram& g = require_graph(l);
    CriterionKind kind = criterion_from_string(o.criterion);
    auto certs = enumerate_criterion(g, kind, o.treatment, o.outcome, o.max_size,
                                     engine_from(o.engine));

    json report = report_skeleton("enumerate", l);
    report["inputs"]["criterion"] = o.criterion;
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["inputs"]["max_size"] = o.max_size;
    for (const auto& c : certs) report["certificates"].push_back(certificate_json(c));
    return emit(out, o, report, l.warnings, [&](std::ostream& os) {
        os << certs.size() << " valid certificate(s)\n";
        for (const auto& c : certs)
            os << "  " << c.describe() << (c.minimal ? "  [minimal]" : "") << "\n";
    });
}

// -------------------------------------------------------------- estimate

Strategy strategy_from_flags(const Opts& o, const CLI::App& sub) {
    CriterionKind kind = criterion_from_string(o.criterion);
    Strategy s;
    switch (kind) {
        case CriterionKind::back_door:
            if (sub.count("--adjust") == 0)
                throw CLI::RequiredError("--adjust (use --adjust \"\" for the empty set)");
            s.kind = EstimatorKind::back_door;
            s.set = split_names(o.adjust);
            break;
        case CriterionKind::conditional_iv:
            if (o.instrument.empty()) throw CLI::RequiredError("--instrument");
            if (sub.count("--adjust") == 0)
                throw CLI::RequiredError("--adjust (use --adjust \"\" for the empty set)");
            s.kind = EstimatorKind::conditional_iv;
            s.instrument = o.instrument;
            s.set = split_names(o.adjust);
            break;
        case CriterionKind::front_door:
            if (sub.count("--set") == 0) throw CLI::RequiredError("--set");
            s.kind = EstimatorKind::front_door;
            s.set = split_names(o.fd_set);
            break;
    }
    return s;
}

int cmd_estimate(const Opts& o, const CLI::App& sub, std::ostream& out) {
    Loaded l = load_inputs(o);
    const CovarianceMatrix& sigma = require_cov(l);
    Strategy s = strategy_from_flags(o, sub);
    std::optional<double> tau;
    if (sub.count("--tau") > 0) tau = o.tau;
    EstimateReport r = estimate_for(sigma, o.treatment, o.outcome, s, o.n, tau);

    json report = report_skeleton("estimate", l);
    report["inputs"]["criterion"] = o.criterion;
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["inputs"]["n"] = o.n;
    report["estimates"].push_back(estimate_json(r));
    for (const auto& w : r.warnings) report["warnings"].push_back(s.describe() + ": " + w);
    return emit(out, o, report, l.warnings,
                [&](std::ostream& os) { print_estimate(os, r); });
}

// --------------------------------------------------------------- compare

std::string describe_of(const EstimateReport& r) {
    Strategy s;
    s.kind = r.kind;
    s.set = r.set;
    s.instrument = r.instrument;
    return s.describe();
}

int cmd_compare(const Opts& o, std::ostream& out) {
    Loaded l = load_inputs(o);
    const CovarianceMatrix& sigma = require_cov(l);
    std::vector<Strategy> strategies;
    for (const auto& text : o.strategies) strategies.push_back(Strategy::parse(text));
    ComparisonTable table = compare_estimators(sigma, o.treatment, o.outcome, o.n, strategies);

    json report = report_skeleton("compare", l);
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["inputs"]["n"] = o.n;
    for (const auto& r : table.reports) report["estimates"].push_back(estimate_json(r));
    json ratios = json::array();
    for (std::size_t i = 1; i < table.reports.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            ratios.push_back({{"worse", describe_of(table.reports[i])},
                              {"better", describe_of(table.reports[j])},
                              {"ratio", jnum(table.ratios[i][j])}});
    report["ratios"] = std::move(ratios);
    for (const auto& w : table.warnings) report["warnings"].push_back(w);

    std::vector<std::string> warnings = l.warnings;
    warnings.insert(warnings.end(), table.warnings.begin(), table.warnings.end());
    return emit(out, o, report, warnings, [&](std::ostream& os) {
        std::size_t width = 8;
        for (const auto& r : table.reports)
            width = std::max(width, describe_of(r).size());
        os << std::left << std::setw(static_cast<int>(width) + 2) << "strategy"
           << std::setw(18) << "tau_hat" << std::setw(18) << "n_times_avar"
           << std::setw(18) << "avar" << "finite_var\n";
        for (const auto& r : table.reports) {
            os << std::left << std::setw(static_cast<int>(width) + 2) << describe_of(r)
               << std::setw(18) << fmt12(r.tau_hat) << std::setw(18) << fmt12(r.n_times_avar)
               << std::setw(18) << fmt12(r.avar)
               << (r.finite_var ? fmt12(*r.finite_var) : "-") << "\n";
        }
        for (std::size_t i = 1; i < table.reports.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                os << "ratio " << describe_of(table.reports[i]) << " / "
                   << describe_of(table.reports[j]) << " = " << fmt12(table.ratios[i][j])
                   << "\n";
    });
}

// ------------------------------------------------------------- recommend

int cmd_recommend(const Opts& o, const CLI::App& sub, std::ostream& out) {
    Loaded l = load_inputs(o);
    const PathDiagram& g = require_graph(l);
    const CovarianceMatrix* sigma = l.cov ? &*l.cov : nullptr;
    std::optional<int> n;
    if (sub.count("--n") > 0) n = o.n;
    RecommendReport r = recommend(g, o.treatment, o.outcome, o.max_size, sigma, n,
                                  engine_from(o.engine));

    json report = report_skeleton("recommend", l);
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["inputs"]["max_size"] = o.max_size;
    report["identifiable"] = r.identifiable;
    for (const auto& eval : r.ranked) {
        report["certificates"].push_back(certificate_json(eval.certificate));
        if (eval.estimate) report["estimates"].push_back(estimate_json(*eval.estimate));
    }
    for (const auto& v : r.orderings)
        if (v.asserted()) report["dominance"].push_back(dominance_json(v));
    for (const auto& w : r.warnings) report["warnings"].push_back(w);

    std::vector<std::string> warnings = l.warnings;
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    return emit(out, o, report, warnings, [&](std::ostream& os) {
        os << "identifiable: " << (r.identifiable ? "yes" : "no") << "\n";
        os << "ranking:\n";
        for (std::size_t i = 0; i < r.ranked.size(); ++i) {
            const auto& eval = r.ranked[i];
            os << "  " << (i + 1) << ". " << eval.strategy.describe();
            if (eval.estimate)
                os << "  n_times_avar=" << fmt12(eval.estimate->n_times_avar);
            os << "\n";
        }
        if (!r.orderings.empty()) os << "orderings:\n";
        for (const auto& v : r.orderings)
            if (v.asserted()) os << "  " << v.describe() << "\n";
    });
}

// -------------------------------------------------------------- simulate

int cmd_simulate(const Opts& o, std::ostream& out) {
    Loaded l = load_inputs(o);
    std::vector<Strategy> strategies;
    for (const auto& text : o.strategies) strategies.push_back(Strategy::parse(text));
    std::vector<int> sizes = split_sizes(o.sizes);
    if (o.reps < 2) throw Error("--reps must be at least 2");

    std::ofstream raw;
    std::ostream* raw_ptr = nullptr;
    if (!o.raw_out.empty()) {
        raw.open(o.raw_out, std::ios::binary);
        if (!raw) throw Error("cannot open '" + o.raw_out + "' for writing");
        raw_ptr = &raw;
    }

    SimulationTable table =
        l.cov ? monte_carlo_variances(*l.cov, o.treatment, o.outcome, strategies, sizes,
                                      o.reps, o.seed, raw_ptr)
              : monte_carlo_variances(require_graph(l), o.treatment, o.outcome, strategies,
                                      sizes, o.reps, o.seed, raw_ptr);

    json report = report_skeleton("simulate", l);
    report["inputs"]["treatment"] = o.treatment;
    report["inputs"]["outcome"] = o.outcome;
    report["inputs"]["reps"] = o.reps;
    report["inputs"]["seed"] = o.seed;
    json rows = json::array();
    for (std::size_t k = 0; k < table.strategies.size(); ++k)
        for (std::size_t s = 0; s < table.sizes.size(); ++s) {
            const SimulationCell& c = table.cells[k][s];
            json row;
            row["strategy"] = table.strategies[k].describe();
            row["n"] = table.sizes[s];
            row["mean"] = jnum(c.mean);
            row["empirical_var"] = jnum(c.empirical_var);
            row["mad"] = jnum(c.mad);
            row["finite_var"] = c.finite_var ? json(jnum(*c.finite_var)) : json(nullptr);
            row["avar"] = jnum(c.avar);
            row["excluded"] = c.excluded;
            rows.push_back(std::move(row));
        }
    report["table"] = std::move(rows);
    return emit(out, o, report, l.warnings, [&](std::ostream& os) {
        std::size_t width = 8;
        for (const auto& s : table.strategies)
            width = std::max(width, s.describe().size());
        os << std::left << std::setw(static_cast<int>(width) + 2) << "strategy"
           << std::setw(6) << "n" << std::setw(16) << "empirical_var" << std::setw(16)
           << "finite_var" << std::setw(16) << "avar" << std::setw(16) << "mad"
           << "excluded\n";
        for (std::size_t k = 0; k < table.strategies.size(); ++k)
            for (std::size_t s = 0; s < table.sizes.size(); ++s) {
                const SimulationCell& c = table.cells[k][s];
                os << std::left << std::setw(static_cast<int>(width) + 2)
                   << table.strategies[k].describe() << std::setw(6) << table.sizes[s]
                   << std::setw(16) << fmt12(c.empirical_var) << std::setw(16)
                   << (c.finite_var ? fmt12(*c.finite_var) : "-") << std::setw(16)
                   << fmt12(c.avar) << std::setw(16) << fmt12(c.mad) << c.excluded << "\n";
            }
    });
}

// --------------------------------------------------------------- dataset

int cmd_dataset(const Opts& o, std::ostream& out) {
    EmbeddedDataset d = embedded_dataset(o.name);
    if (!o.json_out && o.format == "csv") {
        out << d.covariance.to_csv();
        return 0;
    }
    if (!o.json_out && o.format == "graph") {
        if (!d.graph) throw Error("dataset '" + o.name + "' has no bundled diagram");
        out << d.graph->to_source();
        return 0;
    }

    Loaded l;
    l.inputs["name"] = o.name;
    json report = report_skeleton("dataset", l);
    json jd;
    jd["name"] = d.name;
    jd["labels"] = d.covariance.labels();
    jd["covariance_csv"] = d.covariance.to_csv();
    jd["graph"] = d.graph ? json(d.graph->to_source()) : json(nullptr);
    jd["notes"] = d.notes;
    report["dataset"] = std::move(jd);
    return emit(out, o, report, {}, [&](std::ostream& os) {
        os << "dataset: " << d.name << "\n"
           << "notes: " << d.notes << "\n"
           << "covariance:\n"
           << d.covariance.to_csv();
        if (d.graph) os << "diagram:\n" << d.graph->to_source();
    });
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Identifiability criteria, estimators and criterion selection for total "
                 "effects in linear structural equation models"};
    app.require_subcommand(1);

    Opts o;
    auto add_common = [&](CLI::App* sub, bool engine_opt = true) {
        sub->add_option("--graph", o.graph_path, "Path diagram file (edge-list format)");
        sub->add_option("--cov", o.cov_path, "Covariance CSV file");
        sub->add_option("--dataset", o.dataset, "Embedded dataset name");
        sub->add_flag("--json", o.json_out, "Emit the JSON report instead of text");
        if (engine_opt)
            sub->add_option("--engine", o.engine, "d-separation engine")
                ->check(CLI::IsMember({"fast", "oracle"}));
    };

    CLI::App* dsep = app.add_subcommand("dsep", "Query d-separation in a path diagram");
    add_common(dsep);
    dsep->add_option("--a", o.a, "First vertex set (comma-separated)")->required();
    dsep->add_option("--b", o.b, "Second vertex set (comma-separated)")->required();
    dsep->add_option("--given", o.given, "Conditioning set (comma-separated, may be empty)");

    CLI::App* check = app.add_subcommand("check", "Check one identifiability criterion");
    add_common(check);
    check->add_option("--criterion", o.criterion, "back-door | conditional-iv | front-door")
        ->required();
    check->add_option("--treatment", o.treatment, "Treatment variable")->required();
    check->add_option("--outcome", o.outcome, "Outcome variable")->required();
    check->add_option("--adjust", o.adjust,
                      "Adjustment/conditioning set (\"\" for the empty set)");
    check->add_option("--set", o.fd_set, "Front-door intermediate set");
    check->add_option("--instrument", o.instrument, "Instrumental variable");

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "Enumerate all valid certificates up to a size");
    add_common(enumerate);
    enumerate->add_option("--criterion", o.criterion, "back-door | conditional-iv | front-door")
        ->required();
    enumerate->add_option("--treatment", o.treatment, "Treatment variable")->required();
    enumerate->add_option("--outcome", o.outcome, "Outcome variable")->required();
    enumerate->add_option("--max-size", o.max_size, "Largest set size to search");

    CLI::App* estimate =
        app.add_subcommand("estimate", "Estimate a total effect with its variances");
    add_common(estimate, false);
    estimate->add_option("--criterion", o.criterion, "back-door | conditional-iv | front-door")
        ->required();
    estimate->add_option("--treatment", o.treatment, "Treatment variable")->required();
    estimate->add_option("--outcome", o.outcome, "Outcome variable")->required();
    estimate->add_option("--adjust", o.adjust,
                         "Adjustment/conditioning set (\"\" for the empty set)");
    estimate->add_option("--set", o.fd_set, "Front-door intermediate set");
    estimate->add_option("--instrument", o.instrument, "Instrumental variable");
    estimate->add_option("--n", o.n, "Sample size")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--tau", o.tau,
                         "Known total effect for the instrumental-variable variance");

    CLI::App* compare =
        app.add_subcommand("compare", "Compare several strategies on one covariance matrix");
    add_common(compare, false);
    compare->add_option("--treatment", o.treatment, "Treatment variable")->required();
    compare->add_option("--outcome", o.outcome, "Outcome variable")->required();
    compare->add_option("--n", o.n, "Sample size")->required()->check(CLI::PositiveNumber);
    compare
        ->add_option("--strategy", o.strategies,
                     "Strategy, e.g. back-door:S | civ:Z|T | front-door:M (repeatable)")
        ->required();

    CLI::App* recommendCmd =
        app.add_subcommand("recommend", "Rank all strategies with graphical/numeric basis");
    add_common(recommendCmd);
    recommendCmd->add_option("--treatment", o.treatment, "Treatment variable")->required();
    recommendCmd->add_option("--outcome", o.outcome, "Outcome variable")->required();
    recommendCmd->add_option("--max-size", o.max_size, "Largest set size to search");
    recommendCmd->add_option("--n", o.n, "Sample size for numeric comparison")
        ->check(CLI::PositiveNumber);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo study of the plug-in estimators");
    add_common(simulate, false);
    simulate->add_option("--treatment", o.treatment, "Treatment variable")->required();
    simulate->add_option("--outcome", o.outcome, "Outcome variable")->required();
    simulate
        ->add_option("--strategy", o.strategies,
                     "Strategy, e.g. back-door:S | civ:Z|T | front-door:M (repeatable)")
        ->required();
    simulate->add_option("--sizes", o.sizes, "Comma-separated sample sizes");
    simulate->add_option("--reps", o.reps, "Replications per cell")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", o.seed, "Base seed (defaults to $TEC_SEED)")
        ->envname("TEC_SEED");
    simulate->add_option("--raw-out", o.raw_out,
                         "File receiving one strategy,n,replication,tau_hat row per draw");

    CLI::App* dataset = app.add_subcommand("dataset", "Emit an embedded dataset");
    dataset->add_option("--name", o.name, "Dataset name")->required();
    dataset->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"human", "csv", "graph"}));
    dataset->add_flag("--json", o.json_out, "Emit the JSON report instead of text");

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("tec");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (dsep->parsed()) return cmd_dsep(o, out);
        if (check->parsed()) return cmd_check(o, *check, out);
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (estimate->parsed()) return cmd_estimate(o, *estimate, out);
        if (compare->parsed()) return cmd_compare(o, out);
        if (recommendCmd->parsed()) return cmd_recommend(o, *recommendCmd, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (dataset->parsed()) return cmd_dataset(o, out);
        err << "error: no subcommand given\n" << app.help();
        return 2;
    } catch (const CLI::CallForHelp&) {
        auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run 'tec --help' or 'tec <subcommand> --help' for usage\n";
        return 2;
    } catch (const tec::Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tec::cli
