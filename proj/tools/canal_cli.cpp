// Command-line front end: analysis of single functions, Derrida curves for
// deterministic and stochastic networks, structural sweeps, ensemble
// sampling, and rank correlation of sweep columns.
//
// All numeric output is dual-rendered (exact rational plus rounded decimal),
// byte-stable across runs: fixed column orders, fixed key orders, '\n' line
// ends, no locale-dependent formatting.

#include <canal/canalization.hpp>
#include <canal/derrida.hpp>
#include <canal/ensemble.hpp>
#include <canal/expression.hpp>
#include <canal/network_io.hpp>
#include <canal/rational.hpp>
#include <canal/rng.hpp>
#include <canal/sdds.hpp>
#include <canal/sensitivity.hpp>
#include <canal/truth_table.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace canal;

struct CommonOptions {
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    std::uint64_t work_cap = std::uint64_t{1} << 34;
    int precision = 12;
    std::string out;
    std::string format = "csv";
    bool check_oracle = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_format = true) {
    cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    cmd->add_option("--work-cap", opt.work_cap, "work limit for exhaustive oracles");
    cmd->add_option("--precision", opt.precision, "significant digits for decimals")
        ->check(CLI::Range(1, 50));
    cmd->add_option("--out", opt.out, "output path (default: standard output)");
    if (with_format)
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--check-oracle", opt.check_oracle,
                  "cross-check results against an independent oracle");
}

std::string decimal(const Rational& r, int precision) {
    return to_decimal_string(r, precision);
}

std::string double_text(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

nlohmann::json dual(const Rational& r, int precision) {
    return {{"rational", to_fraction_string(r)}, {"decimal", decimal(r, precision)}};
}

struct MRange {
    int lo = 0;
    int hi = 0;
};

MRange parse_m_range(const std::string& text, int fallback_lo, int fallback_hi) {
    if (text.empty()) return {fallback_lo, fallback_hi};
    MRange r;
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--m", "expected an integer or lo..hi range");
    }
    if (r.lo > r.hi) throw CLI::ValidationError("--m", "range is empty");
    return r;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

std::string join_layers(const std::vector<int>& layers) {
    std::string s;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(layers[i]);
    }
    return s;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& text, int arity, const CommonOptions& opt) {
    BooleanFunction f = arity > 0 ? function_from_text(text, arity)
                                  : [&] {
                                        bool table = !text.empty();
                                        for (char ch : text)
                                            if (ch != '0' && ch != '1') table = false;
                                        if (table || text.rfind("0x", 0) == 0 ||
                                            text.rfind("0X", 0) == 0)
                                            return BooleanFunction::parse_table(text);
                                        return parse_expression(text);
                                    }();
    FunctionStats fs = stats(f);
    CanalizingStructure st = decompose(f);
    SensitivityProfile prof = sensitivity_profile(f, opt.work_cap);

    nlohmann::json j;
    j["arity"] = f.arity();
    j["table"] = f.render_table();
    j["weight"] = fs.weight;
    j["bias"] = dual(fs.bias, opt.precision);
    j["absolute_bias"] = dual(fs.absolute_bias, opt.precision);
    j["essential"] = fs.essential;
    nlohmann::json jc;
    jc["depth"] = st.depth;
    jc["layer_sizes"] = st.layer_sizes;
    jc["order"] = st.order;
    jc["inputs"] = st.inputs;
    jc["outputs"] = st.outputs;
    jc["nested_canalizing"] = st.depth == f.arity();
    if (st.core)
        jc["core"] = st.core->render_table();
    else
        jc["core"] = nullptr;
    if (st.core_off_count)
        jc["v"] = *st.core_off_count;
    else
        jc["v"] = nullptr;
    j["canalization"] = jc;
    nlohmann::json ja = nlohmann::json::array();
    for (const Rational& a : activity_vector(f)) ja.push_back(dual(a, opt.precision));
    j["activities"] = ja;
    nlohmann::json js = nlohmann::json::array(), jsn = nlohmann::json::array();
    for (int c = 0; c <= f.arity(); ++c) {
        js.push_back(dual(prof.S[c], opt.precision));
        jsn.push_back(dual(prof.s[c], opt.precision));
    }
    j["c_sensitivity"] = js;
    j["normalized_c_sensitivity"] = jsn;
    // Constants are the one case the structure cannot rebuild: it does not
    // record which constant.
    if (opt.check_oracle && !f.is_constant()) {
        BooleanFunction rebuilt = build_from_structure(st);
        j["oracle"] = {{"reconstruction_ok", rebuilt == f}};
    }
    write_output(opt.out, j.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------- derrida / sdds-derrida

int cmd_derrida(const std::string& path, const std::string& m_text, const CommonOptions& opt) {
    NetworkSpec net = load_network(path);
    for (const std::string& w : validate_network(net)) std::cerr << "warning: " << w << "\n";
    MRange mr = parse_m_range(m_text, 0, net.N);
    if (mr.lo < 0 || mr.hi > net.N) throw std::runtime_error("m range outside [0, N]");
    SensitivityCache cache;
    std::vector<nlohmann::json> rows;
    std::ostringstream csv;
    csv << "m,D,exact_rational";
    if (opt.check_oracle) csv << ",oracle,deviation";
    csv << "\n";
    for (int m = mr.lo; m <= mr.hi; ++m) {
        Rational D = derrida_value(net, m, cache);
        nlohmann::json row;
        row["m"] = m;
        row["D"] = dual(D, opt.precision);
        csv << m << "," << decimal(D, opt.precision) << "," << to_fraction_string(D);
        if (opt.check_oracle) {
            try {
                Rational oracle = derrida_exhaustive(net, m, opt.work_cap);
                Rational dev = D - oracle;
                if (dev < 0) dev = -dev;
                row["oracle"] = {{"kind", "exhaustive"}, {"value", dual(oracle, opt.precision)},
                                 {"deviation", dual(dev, opt.precision)}};
                csv << "," << decimal(oracle, opt.precision) << "," << decimal(dev, opt.precision);
            } catch (const WorkCapError&) {
                MonteCarloEstimate mc = derrida_monte_carlo(net, m, opt.samples, opt.seed);
                double exact = numerator(D).convert_to<double>() /
                               denominator(D).convert_to<double>();
                double dev = mc.estimate > exact ? mc.estimate - exact : exact - mc.estimate;
                row["oracle"] = {{"kind", "monte-carlo"},
                                 {"value", double_text(mc.estimate)},
                                 {"std_error", double_text(mc.std_error)},
                                 {"deviation", double_text(dev)}};
                csv << "," << double_text(mc.estimate) << "," << double_text(dev);
            }
        }
        csv << "\n";
        rows.push_back(std::move(row));
    }
    if (opt.format == "json")
        write_output(opt.out, nlohmann::json(rows).dump(2) + "\n");
    else
        write_output(opt.out, csv.str());
    return 0;
}

int cmd_sdds_derrida(const std::string& path, const std::string& m_text,
                     const CommonOptions& opt) {
    SddsSpec spec = load_sdds(path);
    for (const std::string& w : validate_sdds(spec)) std::cerr << "warning: " << w << "\n";
    int N = spec.net.N;
    MRange mr = parse_m_range(m_text, 0, N);
    if (mr.lo < 0 || mr.hi > N) throw std::runtime_error("m range outside [0, N]");
    SensitivityCache cache;
    std::vector<nlohmann::json> rows;
    std::ostringstream csv;
    csv << "m,D,exact_rational";
    if (opt.check_oracle) csv << ",oracle,deviation";
    csv << "\n";
    for (int m = mr.lo; m <= mr.hi; ++m) {
        Rational D = sdds_derrida(spec, m, cache);
        nlohmann::json row;
        row["m"] = m;
        row["D"] = dual(D, opt.precision);
        csv << m << "," << decimal(D, opt.precision) << "," << to_fraction_string(D);
        if (opt.check_oracle) {
            // The closed form is exact only without self-inputs and with
            // matching propensities; the oracle reports the true expectation.
            try {
                Rational oracle = sdds_derrida_exhaustive(spec, m, opt.work_cap);
                Rational dev = D - oracle;
                if (dev < 0) dev = -dev;
                row["oracle"] = {{"kind", "exhaustive"}, {"value", dual(oracle, opt.precision)},
                                 {"deviation", dual(dev, opt.precision)}};
                csv << "," << decimal(oracle, opt.precision) << "," << decimal(dev, opt.precision);
            } catch (const WorkCapError&) {
                MonteCarloEstimate mc = sdds_derrida_monte_carlo(spec, m, opt.samples, opt.seed);
                double exact = numerator(D).convert_to<double>() /
                               denominator(D).convert_to<double>();
                double dev = mc.estimate > exact ? mc.estimate - exact : exact - mc.estimate;
                row["oracle"] = {{"kind", "monte-carlo"},
                                 {"value", double_text(mc.estimate)},
                                 {"std_error", double_text(mc.std_error)},
                                 {"deviation", double_text(dev)}};
                csv << "," << double_text(mc.estimate) << "," << double_text(dev);
            }
        }
        csv << "\n";
        rows.push_back(std::move(row));
    }
    if (opt.format == "json")
        write_output(opt.out, nlohmann::json(rows).dump(2) + "\n");
    else
        write_output(opt.out, csv.str());
    return 0;
}

// ------------------------------------------------------------------ sweep

std::string sweep_rows_csv(const std::vector<SweepRow>& rows, int m_lo, int precision) {
    std::ostringstream csv;
    csv << "w,layers,v,r,k1,abs_bias";
    for (std::size_t i = 0; i < rows[0].D.size(); ++i) csv << ",D" << (m_lo + static_cast<int>(i));
    csv << ",abs_bias_rational";
    for (std::size_t i = 0; i < rows[0].D.size(); ++i)
        csv << ",D" << (m_lo + static_cast<int>(i)) << "_rational";
    csv << "\n";
    for (const SweepRow& row : rows) {
        csv << row.w << "," << join_layers(row.layer_sizes) << "," << row.v << "," << row.r << ","
            << row.k1 << "," << decimal(row.abs_bias, precision);
        for (const Rational& d : row.D) csv << "," << decimal(d, precision);
        csv << "," << to_fraction_string(row.abs_bias);
        for (const Rational& d : row.D) csv << "," << to_fraction_string(d);
        csv << "\n";
    }
    return csv.str();
}

nlohmann::json sweep_rows_json(const std::vector<SweepRow>& rows, int m_lo, int precision) {
    nlohmann::json out = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        nlohmann::json jr;
        jr["w"] = row.w;
        jr["layers"] = row.layer_sizes;
        jr["v"] = row.v;
        jr["r"] = row.r;
        jr["k1"] = row.k1;
        jr["abs_bias"] = dual(row.abs_bias, precision);
        nlohmann::json jd = nlohmann::json::object();
        for (std::size_t i = 0; i < row.D.size(); ++i)
            jd["D" + std::to_string(m_lo + static_cast<int>(i))] = dual(row.D[i], precision);
        jr["D"] = jd;
        out.push_back(std::move(jr));
    }
    return out;
}

int cmd_sweep(const std::string& kind, int N, int n, int k, const std::string& m_text,
              const CommonOptions& opt) {
    if (kind == "ncf") {
        MRange mr = parse_m_range(m_text, 1, 1);
        std::vector<SweepRow> rows = sweep_ncf(N, n, mr.lo, mr.hi);
        double max_dev = 0;
        if (opt.check_oracle) {
            // Per class, enumerate the canonical representative's normalized
            // sensitivities and recompute the Derrida column from them.
            SensitivityCache cache;
            for (const SweepRow& row : rows) {
                BooleanFunction rep = build_canonical({n, row.layer_sizes, std::nullopt});
                if (row.w != rep.weight()) rep = rep.complement();
                const auto& s = cache.normalized(rep);
                for (std::size_t i = 0; i < row.D.size(); ++i) {
                    Rational d = derrida_homogeneous(N, s, n, mr.lo + static_cast<int>(i));
                    Rational dev = d - row.D[i];
                    if (dev < 0) dev = -dev;
                    double devd = numerator(dev).convert_to<double>() /
                                  denominator(dev).convert_to<double>();
                    if (devd > max_dev) max_dev = devd;
                }
            }
            std::cerr << "oracle: max deviation " << double_text(max_dev) << "\n";
        }
        write_output(opt.out, opt.format == "json"
                                  ? sweep_rows_json(rows, mr.lo, opt.precision).dump(2) + "\n"
                                  : sweep_rows_csv(rows, mr.lo, opt.precision));
        return 0;
    }
    if (kind == "layered") {
        std::vector<SweepRow> rows = sweep_layered(n, k);
        if (opt.check_oracle) {
            // Canalizing-variable activities are exact per function; check
            // them on a canonical representative of each class.
            Rational max_dev = 0;
            for (const SweepRow& row : rows) {
                BooleanFunction rep = build_canonical({n, row.layer_sizes, row.v}, opt.seed);
                ActivityVector enumerated = activity_vector(rep);
                LayeredActivities lay = exact_activities_layered(n, row.layer_sizes, row.v);
                for (int j = 0; j < k; ++j) {
                    Rational dev = enumerated[j] - lay.alpha[j];
                    if (dev < 0) dev = -dev;
                    if (dev > max_dev) max_dev = dev;
                }
            }
            std::cerr << "oracle: max canalizing-activity deviation "
                      << to_fraction_string(max_dev) << "\n";
        }
        write_output(opt.out, opt.format == "json"
                                  ? sweep_rows_json(rows, 1, opt.precision).dump(2) + "\n"
                                  : sweep_rows_csv(rows, 1, opt.precision));
        return 0;
    }
    if (kind == "depth") {
        std::vector<DepthComparisonRow> rows =
            sweep_depth_comparison({{n, k}}, opt.samples, opt.seed);
        std::ostringstream csv;
        csv << "n,k,ensemble,D1,approx,D1_rational\n";
        nlohmann::json jrows = nlohmann::json::array();
        for (const DepthComparisonRow& row : rows) {
            std::string ens = row.min_depth ? "min-depth" : "exact-depth";
            csv << row.n << "," << row.k << "," << ens << "," << decimal(row.d1, opt.precision)
                << "," << (row.approx ? "true" : "false") << "," << to_fraction_string(row.d1)
                << "\n";
            jrows.push_back({{"n", row.n},
                             {"k", row.k},
                             {"ensemble", ens},
                             {"D1", dual(row.d1, opt.precision)},
                             {"approx", row.approx}});
        }
        write_output(opt.out,
                     opt.format == "json" ? jrows.dump(2) + "\n" : csv.str());
        return 0;
    }
    throw CLI::ValidationError("--kind", "expected ncf, layered, or depth");
}

// ----------------------------------------------------------------- sample

int cmd_sample(const std::string& kind, int n, int k, const std::string& layers_text,
               std::uint64_t count, const CommonOptions& opt) {
    std::vector<int> layers;
    if (!layers_text.empty()) {
        std::istringstream in(layers_text);
        std::string part;
        while (std::getline(in, part, ',')) layers.push_back(std::stoi(part));
    }
    std::ostringstream csv;
    csv << "index,function,depth,layers";
    if (opt.check_oracle) csv << ",ok";
    csv << "\n";
    nlohmann::json jrows = nlohmann::json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        Rng rng = Rng::stream(opt.seed, i);
        BooleanFunction f(1);
        if (kind == "k-canalizing")
            f = random_k_canalizing(n, k, rng);
        else if (kind == "exact-depth")
            f = random_exact_depth(n, k, rng);
        else if (kind == "ncf")
            f = layers.empty() ? random_k_canalizing(n, n, rng)
                               : random_ncf_with_layers(n, layers, rng);
        else
            throw CLI::ValidationError("--kind", "expected k-canalizing, exact-depth, or ncf");
        CanalizingStructure st = decompose(f);
        csv << i << "," << f.render_table() << "," << st.depth << ","
            << join_layers(st.layer_sizes);
        nlohmann::json jr = {{"index", i},
                             {"function", f.render_table()},
                             {"depth", st.depth},
                             {"layers", st.layer_sizes}};
        if (opt.check_oracle) {
            bool ok = true;
            if (kind == "k-canalizing") ok = st.depth >= k;
            if (kind == "exact-depth") ok = st.depth == k;
            if (kind == "ncf")
                ok = st.depth == n && (layers.empty() || st.layer_sizes == layers);
            csv << "," << (ok ? "true" : "false");
            jr["ok"] = ok;
        }
        csv << "\n";
        jrows.push_back(std::move(jr));
    }
    write_output(opt.out, opt.format == "json" ? jrows.dump(2) + "\n" : csv.str());
    return 0;
}

// -------------------------------------------------------------- correlate

int cmd_correlate(const std::string& path, const std::string& x_col, const std::string& y_col,
                  const CommonOptions& opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty input " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::runtime_error("no column named " + name + " in " + path);
    };
    std::size_t xi = find_col(x_col), yi = find_col(y_col);
    std::vector<Rational> xs, ys;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() <= std::max(xi, yi))
            throw std::runtime_error("short row in " + path);
        xs.push_back(parse_rational(cells[xi]));
        ys.push_back(parse_rational(cells[yi]));
    }
    std::optional<SpearmanResult> rho = spearman(xs, ys);
    std::ostringstream csv;
    csv << "x,y,points,spearman,rank_covariance\n";
    nlohmann::json j;
    j["x"] = x_col;
    j["y"] = y_col;
    j["points"] = xs.size();
    if (rho) {
        csv << x_col << "," << y_col << "," << xs.size() << "," << double_text(rho->value) << ","
            << to_fraction_string(rho->rank_covariance) << "\n";
        j["spearman"] = double_text(rho->value);
        j["rank_covariance"] = to_fraction_string(rho->rank_covariance);
    } else {
        csv << x_col << "," << y_col << "," << xs.size() << ",undefined,0\n";
        j["spearman"] = nullptr;
    }
    write_output(opt.out, opt.format == "json" ? j.dump(2) + "\n" : csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canalization, sensitivity, and Derrida analysis of Boolean networks"};
    app.require_subcommand(1);

    CommonOptions a_opt;
    std::string a_text;
    int a_arity = -1;
    CLI::App* analyze = app.add_subcommand("analyze", "analyze one Boolean function");
    analyze->add_option("function", a_text, "truth table (binary or 0x hex) or expression")
        ->required();
    analyze->add_option("--arity", a_arity, "declared arity for expressions");
    add_common(analyze, a_opt, false);

    CommonOptions d_opt;
    std::string d_path, d_m;
    CLI::App* derrida = app.add_subcommand("derrida", "Derrida curve of a network");
    derrida->add_option("--network", d_path, "network spec (JSON)")->required();
    derrida->add_option("--m", d_m, "perturbation size or range lo..hi (default 0..N)");
    add_common(derrida, d_opt);

    CommonOptions s_opt;
    std::string s_path, s_m;
    CLI::App* sdds = app.add_subcommand("sdds-derrida", "stochastic Derrida curve");
    sdds->add_option("--spec", s_path, "SDDS spec (JSON with p_up/p_down)")->required();
    sdds->add_option("--m", s_m, "perturbation size or range lo..hi (default 0..N)");
    add_common(sdds, s_opt);

    CommonOptions w_opt;
    std::string w_kind, w_m;
    int w_N = 100, w_n = 5, w_k = 2;
    CLI::App* sweep = app.add_subcommand("sweep", "tabulate Derrida values per class");
    sweep->add_option("--kind", w_kind, "ncf, layered, or depth")->required();
    sweep->add_option("--N", w_N, "network size (ncf sweeps; default 100)");
    sweep->add_option("--n", w_n, "function arity (default 5)");
    sweep->add_option("--k", w_k, "canalizing depth (layered/depth sweeps)");
    sweep->add_option("--m", w_m, "perturbation range for ncf sweeps (default 1)");
    add_common(sweep, w_opt);

    CommonOptions p_opt;
    std::string p_kind, p_layers;
    int p_n = 5, p_k = 2;
    std::uint64_t p_count = 10;
    CLI::App* sample = app.add_subcommand("sample", "draw random functions");
    sample->add_option("--kind", p_kind, "k-canalizing, exact-depth, or ncf")->required();
    sample->add_option("--n", p_n, "arity");
    sample->add_option("--k", p_k, "depth (k-canalizing / exact-depth)");
    sample->add_option("--layers", p_layers, "layer sizes for ncf, e.g. 1,2,2");
    sample->add_option("--count", p_count, "number of functions (default 10)");
    add_common(sample, p_opt);

    CommonOptions c_opt;
    std::string c_in, c_x, c_y;
    CLI::App* correlate = app.add_subcommand("correlate", "Spearman correlation of CSV columns");
    correlate->add_option("--in", c_in, "input CSV")->required();
    correlate->add_option("--x", c_x, "first column name")->required();
    correlate->add_option("--y", c_y, "second column name")->required();
    add_common(correlate, c_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(a_text, a_arity, a_opt);
        if (*derrida) return cmd_derrida(d_path, d_m, d_opt);
        if (*sdds) return cmd_sdds_derrida(s_path, s_m, s_opt);
        if (*sweep) return cmd_sweep(w_kind, w_N, w_n, w_k, w_m, w_opt);
        if (*sample) return cmd_sample(p_kind, p_n, p_k, p_layers, p_count, p_opt);
        if (*correlate) return cmd_correlate(c_in, c_x, c_y, c_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
