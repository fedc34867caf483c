#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "slopes/acceptance.hpp"
#include "slopes/certifier.hpp"
#include "slopes/constraints.hpp"
#include "slopes/graph_io.hpp"
#include "slopes/homology.hpp"
#include "slopes/perms.hpp"

using namespace slopes;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_scale = 2;
constexpr int exit_usage = 64;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int env_int(const char *name, int fallback)
{
    const char *raw = std::getenv(name);
    if (!raw || !*raw)
        return fallback;
    try {
        std::size_t used = 0;
        const int value = std::stoi(raw, &used);
        if (used != std::string(raw).size() || value < 1)
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception &) {
        throw UsageError(fmt::format("{}={} is not a positive integer", name, raw));
    }
}

ScaleCaps caps_from_env()
{
    ScaleCaps caps;
    caps.s = env_int("SLOPES_MAX_S", caps.s);
    caps.t = env_int("SLOPES_MAX_T", caps.t);
    return caps;
}

void write_json(const std::string &path, const json &doc)
{
    if (path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError(fmt::format("--json: cannot write {}", path));
    out << doc.dump(2) << '\n';
}

Polarity polarity_or_default(const std::string &flag, const std::string &text, int n)
{
    if (text.empty())
        return n % 2 == 1 ? Polarity::polarized : Polarity::neutral;
    try {
        return polarity_from_string(text);
    } catch (const std::exception &) {
        throw UsageError(fmt::format("{}: unknown polarity '{}'", flag, text));
    }
}

// ---- certify -------------------------------------------------------------

struct CertifyArgs {
    int s = 0, t = 0, delta = 0;
    std::string mode = "auto";
    std::string json_path;
    int workers = 1;
    std::string s_polarity, t_polarity;
    bool allow_exceptional = false;
    std::vector<std::string> disabled;
};

void print_certificate(const json &c)
{
    const auto &p = c["params"];
    fmt::print("case s={} t={} delta={} ({} / {})\n", p["s"].get<int>(), p["t"].get<int>(), p["delta"].get<int>(),
               p["s_polarity"].get<std::string>(), p["t_polarity"].get<std::string>());
    fmt::print("mode {}  route {}{}\n", c["mode"].get<std::string>(), c["route"].get<std::string>(),
               c["roles_exchanged"].get<bool>() ? "  (roles exchanged)" : "");
    fmt::print("{:<34} {:>14} {:>14}\n", "constraint", "applied", "eliminated");
    for (const auto &e : c["constraint_log"])
        fmt::print("{:<34} {:>14} {:>14}\n", e["name"].get<std::string>(), e["applied"].get<std::int64_t>(),
                   e["eliminated"].get<std::int64_t>());
    fmt::print("configurations {}  survivors {}", c["configurations"].get<std::int64_t>(),
               c["survivors"].get<std::int64_t>());
    if (!c["delta_bound"].is_null())
        fmt::print("  delta bound {}", c["delta_bound"].get<int>());
    if (c.contains("elapsed_ms"))
        fmt::print("  ({:.1f} ms)", c["elapsed_ms"].get<double>());
    fmt::print("\n");
}

int run_certify(const CertifyArgs &a)
{
    CaseParams params{a.s, a.t, a.delta, polarity_or_default("--s-polarity", a.s_polarity, a.s),
                      polarity_or_default("--t-polarity", a.t_polarity, a.t)};
    CertifyOptions opt;
    try {
        opt.mode = mode_from_string(a.mode);
    } catch (const std::exception &) {
        throw UsageError(fmt::format("--mode: unknown mode '{}'", a.mode));
    }
    opt.workers = a.workers;
    opt.caps = caps_from_env();
    opt.allow_exceptional = a.allow_exceptional;
    opt.disabled = {a.disabled.begin(), a.disabled.end()};
    const auto cert = certify_case(params, opt);
    const json doc = to_json(cert, true);
    if (a.json_path != "-")
        print_certificate(doc);
    if (!a.json_path.empty())
        write_json(a.json_path, doc);
    return exit_ok;
}

// ---- lemma ---------------------------------------------------------------

struct LemmaArgs {
    std::string name;
    std::string input;
    int t = 0, delta = 6, size = 0;
    long d = 0, q = 0;
    std::vector<int> u_order, v_order;
};

EmbeddedGraph load_graph(const std::string &path)
{
    if (path.empty())
        throw UsageError("--input is required for this checker");
    std::ifstream in(path);
    if (!in)
        throw UsageError(fmt::format("--input: cannot read {}", path));
    return parse_graph(in);
}

void require(bool ok, const char *flag)
{
    if (!ok)
        throw UsageError(fmt::format("{} is required for this checker", flag));
}

int report(const ConstraintVerdict &v, const std::string &extra = {})
{
    fmt::print("{}: {}{}\n", v.name, v.satisfied ? "satisfied" : "violated",
               v.witness ? fmt::format(" ({})", *v.witness) : "");
    if (!extra.empty())
        fmt::print("{}\n", extra);
    return v.satisfied ? exit_ok : exit_violation;
}

int run_lemma(const LemmaArgs &a)
{
    if (a.name == "reduced-torus")
        return report(reduced_torus_check(load_graph(a.input)));
    if (a.name == "euler") {
        const auto g = load_graph(a.input);
        const auto data = euler_data(g);
        const auto verdict = data.is_torus()
                                 ? ConstraintVerdict::pass("euler")
                                 : ConstraintVerdict::fail("euler", fmt::format("chi {} over {} components",
                                                                                data.chi(), data.components));
        return report(verdict, fmt::format("V={} E={} F={} genus={}", data.vertices, data.edges, data.faces,
                                           data.genus()));
    }
    if (a.name == "s-cycles") {
        const auto g = load_graph(a.input);
        const auto found = detect_s_cycles(g);
        for (const auto &c : found)
            fmt::print("face {} type {{{}, {}}}\n", c.face, c.j, c.j + 1);
        return report(ConstraintVerdict::pass("s-cycles"), fmt::format("{} S-cycle faces", found.size()));
    }
    if (a.name == "parity") {
        const auto g = load_graph(a.input);
        for (const auto &e : g.edges()) {
            const auto pa = g.vertices()[e.a.vertex].parity, pb = g.vertices()[e.b.vertex].parity;
            if (pa && pb && ((*pa == *pb) != (e.sign == Sign::positive)))
                return report(ConstraintVerdict::fail("parity", "edge sign disagrees with its end parities"));
        }
        return report(ConstraintVerdict::pass("parity"));
    }
    if (a.name == "negative-size") {
        require(a.t > 0, "--t");
        require(a.size > 0, "--size");
        return report(negative_size_bound(a.t).check(a.size));
    }
    if (a.name == "positive-size") {
        require(a.t > 0, "--t");
        require(a.size > 0, "--size");
        return report(positive_size_bound(a.t).check(PositiveFamilyShape{a.size, {}, std::nullopt}));
    }
    if (a.name == "size-regularity") {
        require(a.t > 0, "--t");
        const auto r = size_regularity_precondition(a.t, a.delta);
        return report(r.verdict, r.applicable ? fmt::format("delta {} degree {} family size {}", r.forced_delta,
                                                            r.forced_degree, r.forced_size)
                                              : "outside the domain (t < 3 or delta < 6)");
    }
    if (a.name == "jn1") {
        require(!a.u_order.empty(), "--u-order");
        require(!a.v_order.empty(), "--v-order");
        return report(check_jn1(a.u_order, a.v_order, a.delta));
    }
    if (a.name == "longitude-distance") {
        require(a.q != 0, "--q");
        return report(longitude_distance_check(a.d, a.q));
    }
    throw UsageError(fmt::format("lemma: unknown checker '{}'", a.name));
}

// ---- perm / klein --------------------------------------------------------

int run_perm(int n, int alpha, int epsilon)
{
    if (n < 1)
        throw UsageError("--n must be at least 1");
    if (epsilon != 1 && epsilon != -1)
        throw UsageError("--epsilon must be 1 or -1");
    const auto p = make_permutation(n, alpha, sign_of(epsilon));
    const auto orbits = orbit_count(p);
    std::string text;
    for (const auto &o : orbits.orbits)
        text += fmt::format("({})", fmt::join(o, " "));
    fmt::print("sigma(x) = {} {} x mod {}\n", p.alpha, epsilon > 0 ? '-' : '+', n);
    fmt::print("{}\n{} orbits\n", text, orbits.count());
    return exit_ok;
}

void print_klein_row(const json &row)
{
    if (row["solution"].get<bool>())
        fmt::print("m={:<4} solution  q={} alpha=({}, {}) distance {}\n", row["m"].get<long>(), row["q"].get<long>(),
                   row["alpha"][0].get<long>(), row["alpha"][1].get<long>(), row["distance"].get<long>());
    else
        fmt::print("m={:<4} no solution\n", row["m"].get<long>());
}

json klein_row(long m)
{
    const auto sol = solve_klein_slopes(m);
    json row = {{"m", std::labs(m)}, {"solution", sol.has_value()}};
    if (sol) {
        row["q"] = sol->q;
        row["distance"] = sol->distance;
        row["alpha"] = {sol->alpha.mu, sol->alpha.lambda};
    }
    return row;
}

int run_klein(std::optional<long> m, std::optional<long> scan)
{
    if (!m && !scan)
        throw UsageError("klein needs --m or --scan");
    if (scan) {
        if (*scan < 0)
            throw UsageError("--scan must be nonnegative");
        for (long k = 0; k <= *scan; ++k)
            print_klein_row(klein_row(k));
        return exit_ok;
    }
    print_klein_row(klein_row(*m));
    return exit_ok;
}

// ---- verify-all ----------------------------------------------------------

int run_verify_all(const std::string &json_path, int workers, const std::vector<std::string> &faults,
                   const std::vector<int> &only)
{
    AcceptanceOptions opt;
    opt.workers = workers;
    opt.caps = caps_from_env();
    opt.disabled = {faults.begin(), faults.end()};
    opt.only = {only.begin(), only.end()};
    const auto start = std::chrono::steady_clock::now();
    std::FILE *log = json_path == "-" ? stderr : stdout;
    const auto rep = run_acceptance(opt, [log](const CriterionResult &r) {
        fmt::print(log, "{}\n", format_line(r));
        std::fflush(log);
    });
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto failed = std::count_if(rep.criteria.begin(), rep.criteria.end(),
                                      [](const CriterionResult &r) { return !r.passed; });
    fmt::print(log, "{} of {} criteria passed in {:.1f} s\n", rep.criteria.size() - failed, rep.criteria.size(), total);
    if (!json_path.empty())
        write_json(json_path, to_json(rep));
    return rep.passed() ? exit_ok : exit_violation;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Intersection graph certificates for toroidal Dehn fillings"};
    app.set_version_flag("--version", std::string(engine_version()));
    app.require_subcommand(1);

    CertifyArgs certify;
    auto *c = app.add_subcommand("certify", "Certify one (s, t, delta) case");
    c->add_option("--s", certify.s, "Boundary vertex count of S")->required()->check(CLI::PositiveNumber);
    c->add_option("--t", certify.t, "Boundary vertex count of T")->required()->check(CLI::PositiveNumber);
    c->add_option("--delta", certify.delta, "Slope distance")->required()->check(CLI::PositiveNumber);
    c->add_option("--mode", certify.mode, "auto, enumerate or count");
    c->add_option("--json", certify.json_path, "Write the certificate here ('-' for stdout)");
    c->add_option("--workers", certify.workers, "Worker threads")->check(CLI::PositiveNumber);
    c->add_option("--s-polarity", certify.s_polarity, "polarized or neutral");
    c->add_option("--t-polarity", certify.t_polarity, "polarized or neutral");
    c->add_flag("--allow-exceptional", certify.allow_exceptional, "Admit negative families of size t + 2");
    c->add_option("--disable", certify.disabled, "Skip a named constraint (testing only)");

    LemmaArgs lemma;
    auto *l = app.add_subcommand("lemma", "Run a single checker");
    l->add_option("name", lemma.name,
                  "reduced-torus, euler, s-cycles, parity, negative-size, positive-size, size-regularity, jn1, "
                  "longitude-distance")
        ->required();
    l->add_option("--input", lemma.input, "Graph file");
    l->add_option("--t", lemma.t, "Partner vertex count");
    l->add_option("--delta", lemma.delta, "Slope distance");
    l->add_option("--size", lemma.size, "Family size");
    l->add_option("--u-order", lemma.u_order, "Cyclic order of shared points at u");
    l->add_option("--v-order", lemma.v_order, "Cyclic order of shared points at v");
    l->add_option("--d", lemma.d, "Distance of alpha to the longitude");
    l->add_option("--q", lemma.q, "Multiplicity q");

    int n = 0, alpha = 0, epsilon = 1;
    auto *p = app.add_subcommand("perm", "Orbits of x -> alpha - epsilon x mod n");
    p->add_option("--n", n, "Modulus")->required();
    p->add_option("--alpha", alpha, "Offset")->required();
    p->add_option("--epsilon", epsilon, "1 or -1")->required()->allow_extra_args(false);

    std::optional<long> klein_m, klein_scan;
    auto *k = app.add_subcommand("klein", "Klein bottle slopes in P x S1 / [m]");
    k->add_option("--m", klein_m, "Gluing coefficient");
    k->add_option("--scan", klein_scan, "Print every m in 0..MAX");

    std::string verify_json;
    int verify_workers = 1;
    std::vector<std::string> faults;
    auto *v = app.add_subcommand("verify-all", "Run the acceptance criteria");
    v->add_option("--json", verify_json, "Write the summary here ('-' for stdout)");
    v->add_option("--workers", verify_workers, "Worker threads")->check(CLI::PositiveNumber);
    v->add_option("--inject-fault", faults, "Disable a named constraint to force a failure");
    std::vector<int> only;
    v->add_option("--criteria", only, "Run only these criteria (1-8)")->check(CLI::Range(1, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*c)
            return run_certify(certify);
        if (*l)
            return run_lemma(lemma);
        if (*p)
            return run_perm(n, alpha, epsilon);
        if (*k)
            return run_klein(klein_m, klein_scan);
        if (*v)
            return run_verify_all(verify_json, verify_workers, faults, only);
    } catch (const UsageError &e) {
        fmt::print(stderr, "usage error: {}\n", e.what());
        return exit_usage;
    } catch (const ScaleLimit &e) {
        fmt::print(stderr, "ScaleLimit: {}\n", e.what());
        return exit_scale;
    } catch (const GraphError &e) {
        fmt::print(stderr, "{}\n", e.what());
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        fmt::print(stderr, "usage error: {}\n", e.what());
        return exit_usage;
    } catch (const std::exception &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_violation;
    }
    return exit_usage;
}
