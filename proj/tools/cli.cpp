#include "cli.hpp"

#include "squeeze/error.hpp"
#include "squeeze/format.hpp"
#include "squeeze/invariants.hpp"
#include "squeeze/verification.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

namespace squeeze::cli {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::schema:
    case ErrorCode::invariant:
    case ErrorCode::usage: return exit_usage;
    case ErrorCode::not_in_domain: return exit_not_in_domain;
    case ErrorCode::uncertified: return exit_verification_failed;
    case ErrorCode::io: return exit_io;
    }
    return exit_usage;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

[[noreturn]] void usage_error(const std::string& msg) { throw Error(ErrorCode::usage, msg); }

double parse_number(std::string_view text, const std::string& what) {
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        usage_error("cannot parse " + what + " from \"" + std::string(text) + "\"");
    return v;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_number(std::string_view(text).substr(start, comma - start), what));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.size() != expected)
        usage_error(what + " needs " + std::to_string(expected) + " comma-separated numbers");
    return out;
}

enum class Invariant { squeezing, fridman_c, polydisk_squeezing, polydisk_squeezing_lower_bound };

Invariant parse_invariant(const std::string& name) {
    if (name == "squeezing")
        return Invariant::squeezing;
    if (name == "fridman-c")
        return Invariant::fridman_c;
    if (name == "polydisk-squeezing")
        return Invariant::polydisk_squeezing;
    if (name == "polydisk-squeezing-lower-bound")
        return Invariant::polydisk_squeezing_lower_bound;
    usage_error("unknown invariant \"" + name +
                "\" (expected squeezing, fridman-c, polydisk-squeezing or polydisk-squeezing-lower-bound)");
}

[[noreturn]] void unavailable(const std::string& invariant, const DomainSpec& domain) {
    usage_error("invariant " + invariant + " is not available for domain kind " + std::string(domain_kind(domain)));
}

DiskPoint single_disk_point(const std::vector<complex>& coords) {
    if (coords.size() != 1)
        usage_error("this domain expects a point of the form re,im");
    return DiskPoint::at(coords.front());
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

InvariantValue evaluate(const DomainSpec& domain, const std::vector<complex>& coords, const std::string& name,
                        const BoundaryOptions& options) {
    const Invariant inv = parse_invariant(name);
    auto exact = [](double v) {
        InvariantValue out;
        out.value = v;
        return out;
    };
    return std::visit(
        overloaded{
            [&](const FinitePunctures& d) {
                if (inv == Invariant::polydisk_squeezing_lower_bound)
                    unavailable(name, domain);
                const DiskPoint z = single_disk_point(coords);
                return inv == Invariant::fridman_c ? fridman_caratheodory_punctured_disk(d, z)
                                                   : squeezing_punctured_disk(d, z);
            },
            [&](const SequencePunctures& d) {
                if (inv == Invariant::polydisk_squeezing_lower_bound)
                    unavailable(name, domain);
                const DiskPoint z = single_disk_point(coords);
                return inv == Invariant::fridman_c ? fridman_caratheodory_punctured_disk(d, z)
                                                   : squeezing_punctured_disk(d, z);
            },
            [&](const PolySequencePunctures& d) {
                if (inv != Invariant::polydisk_squeezing)
                    unavailable(name, domain);
                if (coords.size() != d.dimension())
                    usage_error("point needs " + std::to_string(d.dimension()) + " coordinates");
                return polydisk_squeezing_punctured(d, PolyPoint::at(coords));
            },
            [&](const RemovedBlocks& d) {
                if (inv != Invariant::polydisk_squeezing)
                    unavailable(name, domain);
                if (coords.size() != d.dimension())
                    usage_error("point needs " + std::to_string(d.dimension()) + " coordinates");
                return polydisk_squeezing_removed_blocks(d, PolyPoint::at(coords), options);
            },
            [&](const Annulus& d) {
                if (inv != Invariant::squeezing)
                    unavailable(name, domain);
                return exact(annulus_squeezing(d, single_disk_point(coords)));
            },
            [&](const ProductOfBalls& d) {
                if (inv == Invariant::polydisk_squeezing_lower_bound)
                    return exact(product_of_balls_T_lower_bound(d));
                if (inv != Invariant::squeezing)
                    unavailable(name, domain);
                if (coords.size() != d.n * d.n)
                    usage_error("point needs n^2 = " + std::to_string(d.n * d.n) + " coordinates");
                BallProductPoint z(d.n);
                for (std::size_t i = 0; i < d.n; ++i)
                    z[i].assign(coords.begin() + static_cast<std::ptrdiff_t>(i * d.n),
                                coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * d.n));
                return exact(product_of_balls_squeezing(d, z));
            }},
        domain);
}

bool planar(const DomainSpec& domain) {
    return std::holds_alternative<FinitePunctures>(domain) || std::holds_alternative<SequencePunctures>(domain) ||
           std::holds_alternative<Annulus>(domain);
}

std::string grid_row(const GridJob& job, std::size_t iy) {
    const auto [re_min, re_max, im_min, im_max] = job.rect;
    const double ty = static_cast<double>(iy) / static_cast<double>(job.ny - 1);
    const double im = im_min * (1.0 - ty) + im_max * ty;
    const BoundaryOptions options;
    std::string row;
    for (std::size_t ix = 0; ix < job.nx; ++ix) {
        const double tx = static_cast<double>(ix) / static_cast<double>(job.nx - 1);
        const double re = re_min * (1.0 - tx) + re_max * tx;
        row += format_double(re) + ',' + format_double(im) + ',';
        try {
            const InvariantValue v = evaluate(job.domain, {complex{re, im}}, job.invariant, options);
            row += format_double(v.value) + ',' + std::to_string(v.truncation_index) + ",true\n";
        } catch (const Error& e) {
            if (e.code() != ErrorCode::not_in_domain && e.code() != ErrorCode::uncertified)
                throw;
            row += ",,false\n";
        }
    }
    return row;
}

} // namespace

std::vector<complex> parse_point(const std::string& text) {
    std::vector<complex> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t semi = text.find(';', start);
        const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        const auto v = parse_numbers(part, 2, "point coordinate");
        out.emplace_back(v[0], v[1]);
        if (semi == std::string::npos)
            break;
        start = semi + 1;
    }
    return out;
}

std::string render_grid(const GridJob& job, unsigned threads) {
    if (!planar(job.domain))
        usage_error("grid supports planar domains only (finite_punctures, sequence, annulus)");
    const auto [re_min, re_max, im_min, im_max] = job.rect;
    if (!(re_min < re_max) || !(im_min < im_max))
        usage_error("grid rectangle must satisfy re_min < re_max and im_min < im_max");
    if (job.nx < 2 || job.ny < 2)
        usage_error("grid resolution must be at least 2 in each direction");
    parse_invariant(job.invariant);

    std::vector<std::string> rows(job.ny);
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(job.ny)));
    if (workers == 1) {
        for (std::size_t iy = 0; iy < job.ny; ++iy)
            rows[iy] = grid_row(job, iy);
    } else {
        std::vector<std::exception_ptr> failures(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t iy = w; iy < job.ny; iy += workers)
                            rows[iy] = grid_row(job, iy);
                    } catch (...) {
                        failures[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& f : failures)
            if (f)
                std::rethrow_exception(f);
    }

    std::string csv = "re,im,value,truncation_index,certified\n";
    for (const std::string& row : rows)
        csv += row;
    return csv;
}

int cmd_eval(const std::string& domain_path, const std::string& point, const std::string& invariant,
             double mesh_tolerance, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const DomainSpec domain = load_domain_spec(domain_path);
        const auto coords = parse_point(point);
        BoundaryOptions options;
        options.mesh_tolerance = mesh_tolerance;
        const InvariantValue v = evaluate(domain, coords, invariant, options);
        out << "value\t" << format_double(v.value) << '\n'
            << "truncation_index\t" << v.truncation_index << '\n'
            << "argmin_index\t" << v.argmin_index << '\n'
            << "tail_bound\t" << format_double(v.tail_bound_used) << '\n'
            << "mesh_error\t" << format_double(v.mesh_error) << '\n';
        return int{exit_ok};
    });
}

int cmd_grid(const std::string& domain_path, const std::string& rect, const std::string& resolution,
             const std::string& invariant, const std::string& output_path, unsigned threads, std::ostream& err) {
    return guarded(err, [&] {
        GridJob job{load_domain_spec(domain_path)};
        const auto r = parse_numbers(rect, 4, "--rect");
        job.rect = {r[0], r[1], r[2], r[3]};
        const auto res = parse_numbers(resolution, 2, "--res");
        for (double v : res)
            if (!(v >= 2.0) || v != std::floor(v) || v > 1e6)
                usage_error("--res entries must be integers >= 2");
        job.nx = static_cast<std::size_t>(res[0]);
        job.ny = static_cast<std::size_t>(res[1]);
        job.invariant = invariant;

        std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
        if (!file)
            throw Error(ErrorCode::io, "cannot write " + output_path);
        const std::string csv = render_grid(job, threads);
        file << csv;
        file.flush();
        if (!file)
            throw Error(ErrorCode::io, "failed writing " + output_path);
        return int{exit_ok};
    });
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t trials, const std::string& format,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (format != "text" && format != "json")
            usage_error("--format must be text or json");
        const auto reports = run_suite(suite, seed, trials);
        if (format == "json")
            out << reports_to_json(reports).dump(2) << '\n';
        else
            out << format_reports_text(reports);
        return all_passed(reports) ? int{exit_ok} : int{exit_verification_failed};
    });
}

int cmd_compare(const std::string& domain_path, const std::string& point, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const DomainSpec domain = load_domain_spec(domain_path);
        if (!std::holds_alternative<FinitePunctures>(domain) && !std::holds_alternative<SequencePunctures>(domain))
            usage_error("compare needs a punctured disk (finite_punctures or sequence)");
        const auto coords = parse_point(point);
        const BoundaryOptions options;
        const double s = evaluate(domain, coords, "squeezing", options).value;
        const double h = evaluate(domain, coords, "fridman-c", options).value;
        out << "squeezing\t" << format_double(s) << '\n'
            << "fridman-c\t" << format_double(h) << '\n'
            << "difference\t" << format_double(s - h) << '\n';
        return int{exit_ok};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Squeezing functions and Fridman invariants of punctured and perforated domains"};
    app.require_subcommand(1);

    std::string domain_path, point, invariant = "squeezing", rect, resolution, output, suite, format = "text";
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    double mesh_tol = 1e-6;
    unsigned threads = 1;

    auto* eval = app.add_subcommand("eval", "Evaluate an invariant at a point");
    eval->add_option("--domain", domain_path, "Domain file (JSON)")->required();
    eval->add_option("--point", point, "Point: re,im or re,im;re,im;...")->required();
    eval->add_option("--invariant", invariant,
                     "squeezing | fridman-c | polydisk-squeezing | polydisk-squeezing-lower-bound");
    eval->add_option("--mesh-tol", mesh_tol, "Boundary minimization tolerance")->check(CLI::PositiveNumber);

    auto* grid = app.add_subcommand("grid", "Sweep a planar domain over a rectangle and write CSV");
    grid->add_option("--domain", domain_path, "Domain file (JSON)")->required();
    grid->add_option("--rect", rect, "re_min,re_max,im_min,im_max")->required();
    grid->add_option("--res", resolution, "nx,ny")->required();
    grid->add_option("--output", output, "CSV output path")->required();
    grid->add_option("--invariant", invariant, "squeezing | fridman-c");
    grid->add_option("--threads", threads, "Worker threads (output is identical for any count)");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "paper-claims | invariance | truncation | boundary-oracle | all")->required();
    verify->add_option("--seed", seed, "Seed for the random trials");
    verify->add_option("--trials", trials, "Number of random trials")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "text | json");

    auto* compare = app.add_subcommand("compare", "Print the squeezing function and the Fridman invariant side by side");
    compare->add_option("--domain", domain_path, "Domain file (JSON)")->required();
    compare->add_option("--point", point, "Point: re,im")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{exit_ok} : int{exit_usage};
    }

    if (eval->parsed())
        return cmd_eval(domain_path, point, invariant, mesh_tol, out, err);
    if (grid->parsed())
        return cmd_grid(domain_path, rect, resolution, invariant, output, threads, err);
    if (verify->parsed())
        return cmd_verify(suite, seed, trials, format, out, err);
    return cmd_compare(domain_path, point, out, err);
}

} // namespace squeeze::cli
