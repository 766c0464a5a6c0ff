// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when everything passes).
//
// usage: hjfa_acceptance [path-to-hjfa-binary]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "hjfa/error.hpp"
#include "hjfa/field.hpp"
#include "hjfa/hales_jewett.hpp"
#include "hjfa/hyperelliptic.hpp"
#include "hjfa/quadratic_rank.hpp"
#include "oracles.hpp"

using namespace hjfa;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = limit_s <= 0 || secs < limit_s;
    if (!in_time) o.detail += "; exceeded " + std::to_string(limit_s) + " s";
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << timing << "): " << o.detail
              << std::endl;
}

Rational q(long n) { return Rational(n); }

std::vector<Rational> roots_0123() { return {q(0), q(1), q(2), q(3)}; }

std::vector<unsigned> to_vec(std::span<const hj::Symbol> cell) { return {cell.begin(), cell.end()}; }

// Criteria 3 and 4 share these runs.
struct FpRun {
    std::uint64_t p;
    hyper::EnumerationResult result;
    std::size_t family_size = 0;
    std::size_t verified = 0;
    std::size_t outside_brute = 0;
};

std::vector<FpRun> fp_runs;

std::string run_binary(const std::string& binary, const std::string& args) {
    std::string cmd = binary + " " + args + " 2>&1";
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("cannot start " + binary);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = ::pclose(pipe);
    if (status != 0) throw std::runtime_error("'" + cmd + "' exited with status " + std::to_string(status));
    return out;
}

std::string run_in_process(const std::string& args) {
    std::istringstream in(args);
    std::vector<std::string> argv;
    for (std::string a; in >> a;) argv.push_back(a);
    std::ostringstream out, err;
    int code = cli::run(argv, out, err);
    if (code != 0) throw std::runtime_error("'" + args + "' exited with " + std::to_string(code) + ": " + err.str());
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";

    criterion(1, "Hales-Jewett exactness", 1.0, [] {
        auto n = hj::hj_number_exact(2, 2, 4);
        auto witness = hj::line_free_coloring(2, 2, 1);
        bool witness_ok = witness && !oracle::has_monochromatic_line(2, 1, [&](const std::vector<unsigned>& cell) {
            return witness->colors[oracle::lex_index(cell, 2)];
        });
        bool pass = n == std::optional<unsigned>(2) && witness_ok;
        std::ostringstream d;
        d << "HJ(2,2) = " << (n ? std::to_string(*n) : "none");
        if (witness) d << ", line-free witness on [2]^1 colors " << witness->colors[0] << witness->colors[1];
        d << (witness_ok ? " verified" : " NOT verified");
        return Outcome{pass, d.str()};
    });

    criterion(2, "line-finder completeness", 10.0, [] {
        std::size_t checked = 0, mismatches = 0;
        for (auto [m, n] : {std::pair{2U, 3U}, {3U, 2U}}) {
            auto cells = hj::cube_size(m, n);
            for (std::uint64_t code = 0; code < (1ULL << cells); ++code) {
                auto colors = oracle::coloring_from_code(code, 2, cells);
                hj::Coloring coloring{m, n, 2, [&, m = m](std::span<const hj::Symbol> cell) {
                                          return static_cast<hj::ColorId>(colors[oracle::lex_index(to_vec(cell), m)]);
                                      }};
                auto got = hj::find_monochromatic_line(coloring);
                bool expected = oracle::has_monochromatic_line(
                    m, n, [&, m = m](const std::vector<unsigned>& c) { return colors[oracle::lex_index(c, m)]; });
                bool sound = true;
                if (got)
                    for (const auto& cell : hj::line_cells(got->line, m)) sound &= coloring.evaluate(cell) == got->color;
                if (got.has_value() != expected || !sound) ++mismatches;
                ++checked;
            }
        }
        return Outcome{checked == 768 && mismatches == 0,
                       std::to_string(checked) + " colorings, " + std::to_string(mismatches) + " mismatches"};
    });

    criterion(3, "pipeline soundness over F_p", 30.0, [] {
        std::ostringstream d;
        bool pass = true;
        for (std::uint64_t p : {17ULL, 97ULL, 257ULL}) {
            hyper::SplitHyperellipticCurve curve(FieldTag::prime(p), roots_0123());
            std::set<std::int64_t> brute;
            for (std::int64_t x = 0; x < static_cast<std::int64_t>(p); ++x)
                if (oracle::legendre(x * (x - 1) * (x - 2) * (x - 3), static_cast<std::int64_t>(p)) >= 0)
                    brute.insert(x);
            FpRun run{p, {}, 0, 0, 0};
            auto stream = hyper::default_c_stream(curve.field(), p);
            run.result = hyper::enumerate_points(curve, stream, stream.size(), hyper::kDefaultNMax);
            // Every successful c, including those whose x repeats an earlier one.
            for (const auto& c : stream) {
                auto cert = hyper::find_point_for_c(curve, c, hyper::kDefaultNMax);
                if (!cert) continue;
                if (hyper::verify_certificate(curve, *cert).ok()) ++run.verified;
                else pass = false;
                if (brute.count(cert->x.get_num().get_si()) == 0) {
                    ++run.outside_brute;
                    pass = false;
                }
            }
            if (run.verified != run.result.successes) pass = false;
            const auto admissible = run.result.attempted - run.result.excluded;
            d << "p=" << p << ": " << run.verified << "/" << run.result.successes << " verified, "
              << run.outside_brute << " outside brute set, success rate " << run.result.successes << "/"
              << admissible << "; ";
            fp_runs.push_back(std::move(run));
        }
        return Outcome{pass, d.str()};
    });

    criterion(4, "distinct-x counting bound", 0, [] {
        if (fp_runs.size() != 3) return Outcome{false, "criterion 3 runs unavailable"};
        std::ostringstream d;
        bool pass = true;
        for (auto& run : fp_runs) {
            hyper::SplitHyperellipticCurve curve(FieldTag::prime(run.p), roots_0123());
            std::set<hyper::LinearMap> family;
            for (unsigned n = 1; n <= hyper::kDefaultNMax; ++n) {
                try {
                    auto b = hyper::choose_b(curve.field(), n);
                    auto part = hyper::linear_family(curve, b);
                    family.insert(part.begin(), part.end());
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::field_too_small) throw;
                }
            }
            std::set<Rational> xs;
            for (const auto& cert : run.result.certificates) xs.insert(cert.x);
            const auto s = run.result.successes, l = family.size();
            const auto bound = l == 0 ? 0 : (s + l - 1) / l;
            bool ok = xs.size() >= bound && xs.size() == run.result.certificates.size();
            pass &= ok;
            d << "p=" << run.p << ": distinct " << xs.size() << " >= ceil(" << s << "/" << l << ") = " << bound << "; ";
        }
        return Outcome{pass, d.str()};
    });

    criterion(5, "p-adic pipeline", 10.0, [] {
        hyper::SplitHyperellipticCurve curve(FieldTag::padic(5, 16), roots_0123());
        Integer modulus;
        mpz_ui_pow_ui(modulus.get_mpz_t(), 5, 16);
        std::size_t admissible = 0, certified = 0, sound = 0;
        for (const auto& c : hyper::default_c_stream(curve.field(), 10000)) {
            if (admissible == 50) break;
            if (hyper::excluded_at_every_n(curve, c, hyper::kDefaultNMax)) continue;
            ++admissible;
            auto cert = hyper::find_point_for_c(curve, c, hyper::kDefaultNMax);
            if (!cert) continue;
            ++certified;
            Rational diff = curve.evaluate(cert->x) - cert->y * cert->y;
            bool ok = diff == 0 || (mpz_divisible_ui_p(diff.get_den().get_mpz_t(), 5) == 0 &&
                                    mpz_divisible_p(diff.get_num().get_mpz_t(), modulus.get_mpz_t()) != 0);
            ok &= hyper::verify_certificate(curve, *cert).ok();
            if (ok) ++sound;
        }
        return Outcome{admissible == 50 && sound == certified && certified > 0,
                       std::to_string(admissible) + " admissible c, " + std::to_string(certified) +
                           " certificates, " + std::to_string(sound) + " with y^2 = f(x) mod 5^16"};
    });

    criterion(6, "non-residue search above the threshold", 0, [] {
        rank::EllipticCurveQ e({Integer(-1), Integer(0), Integer(1)});
        const auto threshold = rank::threshold_constant(1);
        std::size_t primes = 0, fails = 0;
        for (std::uint64_t p = static_cast<std::uint64_t>(threshold) + 1; p <= 300; ++p) {
            if (!is_prime_u64(p) || !e.good_reduction(p)) continue;
            ++primes;
            auto x = rank::nonresidue_x(e, p);
            if (!x || oracle::legendre(static_cast<std::int64_t>(e.f_mod(*x, p)), static_cast<std::int64_t>(p)) != -1)
                ++fails;
        }
        return Outcome{threshold == 13 && fails == 0 && primes > 0,
                       "c(1) = " + std::to_string(threshold) + ", " + std::to_string(primes) + " primes, " +
                           std::to_string(fails) + " failures"};
    });

    criterion(7, "rank-growth construction", 60.0, [] {
        rank::EllipticCurveQ e({Integer(0), Integer(1), Integer(-1)});
        auto family = rank::build_independent_family(e, 5);
        if (family.members.size() != 5)
            return Outcome{false, "family has " + std::to_string(family.members.size()) + " points: " +
                                      family.diagnostic.value_or("")};
        std::vector<Integer> ds;
        bool pass = true;
        std::ostringstream d;
        d << "d =";
        for (const auto& m : family.members) {
            const auto p = static_cast<std::int64_t>(m.p_steer);
            pass &= rank::is_squarefree(m.d) && m.d != 1;
            pass &= rank::fresh_class_check(m.d, ds);
            pass &= m.torsion.p1 != m.torsion.p2 && e.good_reduction(m.torsion.p1) && e.good_reduction(m.torsion.p2);
            pass &= rank::certify_nontorsion(e, m.d, m.point, m.torsion);
            pass &= m.point.on_curve(e, m.d);
            pass &= oracle::legendre(mpz_fdiv_ui(m.d.get_mpz_t(), static_cast<unsigned long>(p)), p) == -1;
            for (const auto& prev : ds)
                pass &= oracle::legendre(mpz_fdiv_ui(prev.get_mpz_t(), static_cast<unsigned long>(p)), p) == 1;
            ds.push_back(m.d);
            d << " " << m.d.get_str() << " (p=" << p << ", B=" << m.torsion.bound.get_str() << ")";
        }
        std::set<Integer> distinct(ds.begin(), ds.end());
        pass &= distinct.size() == 5;
        pass &= rank::verify_family(e, family.members).ok;
        return Outcome{pass, d.str()};
    });

    criterion(8, "specialization counts", 0, [] {
        rank::EllipticCurveQ e({Integer(-1), Integer(0), Integer(1)});
        auto n5 = rank::count_points(e, 5);
        auto n25 = rank::count_points_ext(e, 5);
        bool pass = n5 == 8 && n25 == 32 && oracle::count_points_fp(5, -1, 0, 1) == 8 &&
                    oracle::count_points_fp2(5, -1, 0, 1) == 32;
        std::size_t checked = 0, outside = 0;
        for (std::uint64_t p = 3; p <= 200; p += 2) {
            if (!is_prime_u64(p) || !e.good_reduction(p)) continue;
            ++checked;
            auto t = static_cast<double>(p + 1) - static_cast<double>(rank::count_points(e, p));
            if (std::abs(t) > 2.0 * std::sqrt(static_cast<double>(p))) ++outside;
        }
        pass &= outside == 0;
        return Outcome{pass, "n_5 = " + std::to_string(n5) + ", n_25 = " + std::to_string(n25) + ", Hasse holds at " +
                                 std::to_string(checked - outside) + "/" + std::to_string(checked) + " primes"};
    });

    criterion(9, "square-class algebra", 0, [] {
        std::mt19937_64 rng(9);
        bool pass = true;
        std::ostringstream d;
        for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
            auto field = FieldTag::padic(p);
            auto group = square_class_group(field);
            std::set<std::uint8_t> classes;
            for (const auto& r : group.representatives) classes.insert(square_class(field, r).bits());
            std::size_t bad = 0;
            for (int i = 0; i < 1000; ++i) {
                auto draw = [&] {
                    long num = 0;
                    while (num == 0) num = static_cast<long>(rng() % 20001) - 10000;
                    Rational r(num, 1 + rng() % 1000);
                    r.canonicalize();
                    return r;
                };
                auto x = draw(), y = draw();
                if (square_class(field, x * y) != square_class(field, x) + square_class(field, y)) ++bad;
            }
            pass &= group.representatives.size() == 4 && classes.size() == 4 && bad == 0;
            d << "Q_" << p << ": |Q| = " << classes.size() << ", " << bad << "/1000 failures; ";
        }
        return Outcome{pass, d.str()};
    });

    criterion(10, "deterministic CLI output", 0, [&binary] {
        const std::vector<std::string> commands{
            "hj find-line --m 3 --k 2 --random --seed 42 --n 3",
            "points --field fp:97 --roots 0,1,2,3 --count 10 --n-max 6",
            "points --field qp:5:16 --roots 0,1,2,3 --count 5",
            "rank --roots -1,0,1 --count 2",
        };
        std::size_t identical = 0;
        for (const auto& cmd : commands) {
            auto first = binary.empty() ? run_in_process(cmd) : run_binary(binary, cmd);
            bool same = !first.empty();
            for (int rep = 1; rep < 5; ++rep)
                same &= (binary.empty() ? run_in_process(cmd) : run_binary(binary, cmd)) == first;
            if (same) ++identical;
        }
        return Outcome{identical == commands.size(),
                       std::to_string(identical) + "/" + std::to_string(commands.size()) +
                           " commands byte-identical over 5 runs" + (binary.empty() ? " (in-process)" : "")};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures;
}
