#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hjfa/error.hpp"
#include "hjfa/hales_jewett.hpp"
#include "hjfa/hyperelliptic.hpp"
#include "hjfa/quadratic_rank.hpp"
#include "hjfa/serialization.hpp"

namespace hjfa::cli {

namespace {

using io::Json;

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse, origin + ": " + e.what());
    }
}

std::string dense_digits(const hj::ColoringTable& table) {
    std::string out;
    for (auto c : table.colors) out += std::to_string(c);
    return out;
}

struct FindLineOptions {
    unsigned m = 0;
    unsigned k = 0;
    std::string coloring_file;
    bool random = false;
    std::uint64_t seed = 0;
    unsigned n = 3;
};

int find_line(const FindLineOptions& opt, const Limits& limits, std::ostream& out) {
    hj::ColoringTable table;
    if (!opt.coloring_file.empty()) {
        std::ifstream in(opt.coloring_file);
        if (!in) throw Error(ErrorCode::parse, "cannot open '" + opt.coloring_file + "'");
        table = hj::ColoringTable::read(in);
        if ((opt.m != 0 && table.m != opt.m) || (opt.k != 0 && table.k != opt.k))
            throw Error(ErrorCode::parse, "--m/--k disagree with the coloring file header");
    } else {
        if (opt.m == 0 || opt.k == 0) throw Error(ErrorCode::parse, "--random needs --m and --k");
        auto cells = hj::cube_size(opt.m, opt.n);
        if (cells > limits.max_cells) throw ResourceLimitError("random coloring exceeds cell budget", opt.n);
        table = {opt.m, opt.n, opt.k, {}};
        std::mt19937_64 rng(opt.seed);
        table.colors.reserve(cells);
        for (std::uint64_t i = 0; i < cells; ++i) table.colors.push_back(static_cast<hj::ColorId>(rng() % opt.k));
    }
    auto found = hj::find_monochromatic_line(table.as_coloring(), limits);
    Json j;
    j["m"] = table.m;
    j["N"] = table.n;
    j["k"] = table.k;
    if (opt.random) j["seed"] = opt.seed;
    j["found"] = found.has_value();
    if (found) {
        j["template"] = found->line.to_string(table.m);
        j["color"] = found->color;
        Json cells = Json::array();
        for (const auto& cell : hj::line_cells(found->line, table.m)) {
            Json c = Json::array();
            for (auto s : cell) c.push_back(static_cast<unsigned>(s));
            cells.push_back(std::move(c));
        }
        j["cells"] = std::move(cells);
    }
    out << j.dump(2) << '\n';
    return kOk;
}

int hj_number(unsigned m, unsigned k, unsigned n_cap, const std::string& format, const Limits& limits,
              std::ostream& out) {
    auto n = hj::hj_number_exact(m, k, n_cap, limits);
    if (format == "json") {
        Json j;
        j["m"] = m;
        j["k"] = k;
        j["n_cap"] = n_cap;
        j["hj_number"] = n ? Json(*n) : Json(nullptr);
        // Witness: line-free coloring one dimension below (or at the cap).
        unsigned witness_n = n ? *n - 1 : n_cap;
        if (witness_n >= 1) {
            if (auto w = hj::line_free_coloring(m, k, witness_n, limits)) {
                j["witness"] = Json{{"N", witness_n}, {"colors", dense_digits(*w)}};
            }
        }
        out << j.dump(2) << '\n';
    } else {
        out << (n ? std::to_string(*n) : std::string("none")) << '\n';
    }
    return kOk;
}

struct PointsOptions {
    std::string field;
    std::string roots;
    std::size_t count = 10;
    unsigned n_max = hyper::kDefaultNMax;
    std::size_t max_c = 1000;
};

int points(const PointsOptions& opt, const std::string& format, const Limits& limits, std::ostream& out) {
    auto field = FieldTag::parse(opt.field);
    hyper::SplitHyperellipticCurve curve(field, io::parse_rational_list(opt.roots));
    auto stream = hyper::default_c_stream(field, opt.max_c);
    auto result = hyper::enumerate_points(curve, stream, opt.count, opt.n_max, limits);
    if (format == "csv") {
        out << "x,y\n";
        for (const auto& cert : result.certificates) out << to_string(cert.x) << ',' << to_string(cert.y) << '\n';
        return kOk;
    }
    Json j;
    j["kind"] = "point-certificates";
    j["field"] = field.to_string();
    Json roots = Json::array();
    for (const auto& a : curve.roots()) roots.push_back(to_string(a));
    j["roots"] = std::move(roots);
    j["n_max"] = opt.n_max;
    j["summary"] = Json{{"attempted", result.attempted},
                        {"excluded", result.excluded},
                        {"successes", result.successes},
                        {"failures", result.failures},
                        {"duplicate_x", result.duplicate_x},
                        {"distinct_x", result.certificates.size()}};
    Json certs = Json::array();
    for (const auto& cert : result.certificates) certs.push_back(io::certificate_to_json(curve, cert));
    j["certificates"] = std::move(certs);
    out << j.dump(2) << '\n';
    return kOk;
}

int rank_family(const std::string& roots_text, std::size_t count, const Limits& limits, std::ostream& out,
                std::ostream& err) {
    auto roots = io::parse_rational_list(roots_text);
    if (roots.size() != 3) throw Error(ErrorCode::parse, "--roots needs exactly three integers");
    std::array<Integer, 3> ints;
    for (std::size_t i = 0; i < 3; ++i) {
        if (roots[i].get_den() != 1) throw Error(ErrorCode::parse, "--roots must be integers");
        ints[i] = roots[i].get_num();
    }
    rank::EllipticCurveQ curve(ints);
    rank::FamilyConfig config;
    config.trial_division_bound = limits.trial_division_bound;
    auto family = rank::build_independent_family(curve, count, config);
    out << io::family_to_json(curve, family).dump(2) << '\n';
    if (family.diagnostic) {
        err << "incomplete family: " << *family.diagnostic << '\n';
        return kResourceLimit;
    }
    return kOk;
}

int verify(const std::string& path, const Limits& limits, std::ostream& out) {
    Json doc = parse_json(read_file(path), path);
    if (doc.is_object() && doc.value("kind", "") == "independent-family") {
        auto family = io::family_from_json(doc);
        auto check = rank::verify_family(family.curve, family.members, limits.trial_division_bound);
        if (!check.ok) throw VerificationFailed(check.detail);
        out << "ok: " << family.members.size() << " family point(s) verified\n";
        return kOk;
    }
    std::vector<Json> certs;
    if (doc.is_array()) {
        certs.assign(doc.begin(), doc.end());
    } else if (doc.is_object() && doc.contains("certificates")) {
        certs.assign(doc["certificates"].begin(), doc["certificates"].end());
    } else {
        certs.push_back(doc);
    }
    for (std::size_t i = 0; i < certs.size(); ++i) {
        auto [curve, cert] = io::certificate_from_json(certs[i]);
        auto result = hyper::verify_certificate(curve, cert, limits);
        if (!result)
            throw VerificationFailed("certificate " + std::to_string(i + 1) + ": " +
                                     std::string(hyper::to_string(*result.failure)) + " (" + result.detail + ")");
    }
    out << "ok: " << certs.size() << " certificate(s) verified\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rational points via combinatorial lines, and rank growth over quadratic towers", "hjfa"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format;
    app.add_option("--format", format, "Output format: json, csv (points only) or text; default depends on command")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* hj_cmd = app.add_subcommand("hj", "Hales-Jewett line machinery");
    hj_cmd->require_subcommand(1);
    hj_cmd->fallthrough();

    FindLineOptions find_opt;
    auto* find_cmd = hj_cmd->add_subcommand("find-line", "Find a monochromatic combinatorial line");
    find_cmd->add_option("--m", find_opt.m, "Alphabet size (taken from the file header when omitted)");
    find_cmd->add_option("--k", find_opt.k, "Number of colors (taken from the file header when omitted)");
    auto* coloring_opt = find_cmd->add_option("--coloring", find_opt.coloring_file, "Coloring file")
                             ->check(CLI::ExistingFile);
    auto* random_opt = find_cmd->add_flag("--random", find_opt.random, "Use a seeded random coloring");
    coloring_opt->excludes(random_opt);
    find_cmd->add_option("--seed", find_opt.seed, "Seed for --random")->capture_default_str();
    find_cmd->add_option("--n", find_opt.n, "Dimension N for --random")->capture_default_str()->check(CLI::Range(1U, 64U));

    unsigned num_m = 0, num_k = 0, num_cap = 4;
    auto* number_cmd = hj_cmd->add_subcommand("number", "Exact Hales-Jewett number for tiny parameters");
    number_cmd->add_option("--m", num_m, "Alphabet size")->required()->check(CLI::Range(1U, 255U));
    number_cmd->add_option("--k", num_k, "Number of colors")->required()->check(CLI::Range(1U, 1000U));
    number_cmd->add_option("--n-cap", num_cap, "Largest N to search")->capture_default_str()->check(CLI::Range(1U, 64U));

    PointsOptions points_opt;
    auto* points_cmd = app.add_subcommand("points", "Certified points on y^2 = prod (x - a_i)");
    points_cmd->add_option("--field", points_opt.field, "fp:<p> or qp:<p>:<k>")->required();
    points_cmd->add_option("--roots", points_opt.roots, "Comma-separated distinct roots (even count)")->required();
    points_cmd->add_option("--count", points_opt.count, "Number of distinct-x points to emit")->capture_default_str();
    points_cmd->add_option("--n-max", points_opt.n_max, "Largest Hales-Jewett dimension tried")
        ->capture_default_str()
        ->check(CLI::Range(1U, 64U));
    points_cmd->add_option("--max-c", points_opt.max_c, "Length of the parameter stream")->capture_default_str();

    std::string rank_roots;
    std::size_t rank_count = 5;
    auto* rank_cmd = app.add_subcommand("rank", "Independent points over a tower of quadratic fields");
    rank_cmd->add_option("--roots", rank_roots, "Three distinct integers a1,a2,a3")->required();
    rank_cmd->add_option("--count", rank_count, "Family size")->capture_default_str()->check(CLI::Range(1UL, 1000UL));

    std::string cert_path;
    auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate or family file");
    verify_cmd->add_option("--certificate", cert_path, "JSON produced by `points` or `rank`")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Limits limits = Limits::from_env();
        if (find_cmd->parsed()) {
            if (find_opt.coloring_file.empty() && !find_opt.random)
                throw Error(ErrorCode::parse, "find-line needs --coloring FILE or --random");
            return find_line(find_opt, limits, out);
        }
        if (number_cmd->parsed()) return hj_number(num_m, num_k, num_cap, format.empty() ? "text" : format, limits, out);
        if (points_cmd->parsed()) return points(points_opt, format.empty() ? "json" : format, limits, out);
        if (rank_cmd->parsed()) return rank_family(rank_roots, rank_count, limits, out, err);
        if (verify_cmd->parsed()) return verify(cert_path, limits, out);
    } catch (const VerificationFailed& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::resource_limit:
            case ErrorCode::factorization_limit:
            case ErrorCode::not_found: return kResourceLimit;
            default: return kUsage;
        }
    }
    return kUsage;
}

}  // namespace hjfa::cli
