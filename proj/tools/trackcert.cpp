#include "trackcert/io.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <thread>

using namespace trackcert;
using io::json;
namespace fs = std::filesystem;

namespace {

enum Exit { OK = 0, REJECTED = 1, INCONCLUSIVE = 2, USAGE = 64 };

struct Config {
    std::string surface, tri, word, path, cert, out, mode = "adaptive", K = "1";
    std::string word1, word2, path1, path2;
    std::size_t budget = 100000;
    unsigned seed = 1;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Rational parse_K(const std::string& s)
{
    Rational k;
    try {
        k = Rational(s);
        k.canonicalize();
    } catch (...) {
        throw UsageError("--K: not a rational: " + s);
    }
    if (k <= 0) throw UsageError("--K must be positive");
    return k;
}

Mode parse_mode(const std::string& s) { return s == "strict" ? Mode::Strict : Mode::Adaptive; }

FlipPath load_path(const Config& c, const std::string& word, const std::string& file)
{
    if (!word.empty() + !file.empty() != 1) throw UsageError("give exactly one of a word or --path");
    if (!word.empty()) {
        if (c.surface.empty()) throw UsageError("--word needs --surface");
        if (!c.tri.empty()) throw UsageError("--word works with presets only; use --path with --tri");
        return word_to_path(c.surface, word == "_" ? "" : word);
    }
    json j = io::read_file(file);
    if (!c.tri.empty()) j["triangulation"] = io::read_file(c.tri);
    if (!c.surface.empty() && !j.contains("surface")) j["surface"] = c.surface;
    return io::path_from_json(j);
}

void emit(const Config& c, const json& j)
{
    if (!c.out.empty()) io::write_file(c.out, j);
}

void print_report(const VerificationReport& r)
{
    std::cout << "verdict: " << (r.accepted ? "ACCEPT" : "REJECT") << " (" << r.code << ", " << to_string(r.mode) << ")\n";
    for (auto& s : r.stages)
        if (!s.pass) std::cout << "  stage " << s.stage << ": " << s.detail << "\n";
    if (r.stages.size() >= 7) std::cout << "  y = " << r.lambda_approx.rescale(std::min(30u, r.lambda_approx.scale())).str() << "\n";
    if (!r.ties.empty()) std::cout << "  ties at steps:" << r.ties.size() << "\n";
    std::cout << "  splits " << r.splits << ", " << r.seconds << " s\n";
}

int cmd_classify(const Config& c)
{
    FlipPath p = load_path(c, c.word, c.path);
    auto t = nt_classify(p, parse_K(c.K), parse_mode(c.mode), c.budget);
    json j = {{"type", to_string(t.kind)}};
    std::cout << "type: " << to_string(t.kind);
    if (t.kind == NTType::Periodic) {
        std::cout << " (order " << t.order << ")";
        j["order"] = t.order;
    }
    std::cout << "\n";
    if (t.kind == NTType::PseudoAnosov) {
        auto& g = *t.generated;
        std::cout << "dilatation: " << g.stable.lambda.decimal(30) << "\nminimal polynomial: " << g.stable.field->minpoly().str()
                  << "\n";
        j["lambda"] = g.stable.lambda.decimal(40);
        j["minpoly"] = io::poly_to_json(g.stable.field->minpoly());
        j["certificate"] = io::to_json(g.cert);
    }
    if (t.report) j["report"] = io::to_json(*t.report);
    if (t.kind == NTType::Inconclusive) {
        for (auto& e : t.evidence) std::cout << "  " << e << "\n";
        j["evidence"] = t.evidence;
        j["suspected_reducible"] = t.suspected_reducible;
    }
    emit(c, j);
    return t.kind == NTType::Inconclusive ? INCONCLUSIVE : OK;
}

int cmd_certify(const Config& c)
{
    FlipPath p = load_path(c, c.word, c.path);
    auto rt = roundtrip(p, parse_K(c.K), parse_mode(c.mode), c.budget);
    if (rt.failure) {
        std::cout << "generation failed: " << rt.failure->reason << "\n";
        for (auto& d : rt.failure->diagnostics) std::cout << "  " << d << "\n";
        emit(c, {{"failure", rt.failure->reason}, {"diagnostics", rt.failure->diagnostics}});
        return INCONCLUSIVE;
    }
    print_report(*rt.report);
    emit(c, io::to_json(rt.generated->cert));
    return rt.accepted() ? OK : REJECTED;
}

VerificationReport verify_file(const FlipPath& p, const std::string& file, std::size_t budget)
{
    Certificate cert = io::certificate_from_json(io::read_file(file), p);
    return verify(p, cert, cert.params, budget);
}

int cmd_verify(const Config& c)
{
    FlipPath p = load_path(c, c.word, c.path);
    if (c.cert.empty()) throw UsageError("verify needs --cert");
    if (!fs::is_directory(c.cert)) {
        VerificationReport r;
        try {
            r = verify_file(p, c.cert, c.budget);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw UsageError(c.cert + ": " + e.what());
        }
        print_report(r);
        emit(c, io::to_json(r));
        return r.accepted ? OK : REJECTED;
    }
    std::vector<std::string> files;
    for (auto& e : fs::directory_iterator(c.cert))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<json> reports(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
            try {
                reports[i] = io::to_json(verify_file(p, files[i], c.budget));
            } catch (const std::exception& e) {
                reports[i] = {{"accepted", false}, {"code", "CERT_MALFORMED"}, {"error", e.what()}};
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), unsigned(files.size())));
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    json all = json::object();
    bool ok = !files.empty();
    for (std::size_t i = 0; i < files.size(); ++i) {
        bool acc = reports[i]["accepted"].get<bool>();
        ok = ok && acc;
        std::cout << files[i] << ": " << (acc ? "ACCEPT" : "REJECT") << " " << reports[i]["code"].get<std::string>() << "\n";
        all[files[i]] = reports[i];
    }
    emit(c, all);
    return ok ? OK : REJECTED;
}

int cmd_split_seq(const Config& c)
{
    FlipPath p = load_path(c, c.word, c.path);
    auto t = nt_classify(p, parse_K(c.K), parse_mode(c.mode), c.budget);
    if (t.kind != NTType::PseudoAnosov) {
        std::cout << "not pseudo-Anosov (" << to_string(t.kind) << ")\n";
        return INCONCLUSIVE;
    }
    auto& rec = t.generated->periodicity;
    std::ostringstream csv;
    csv << "step,max-measure,total-measure,filling-flag\n";
    for (std::size_t i = 0; i <= rec.n + rec.m && i < rec.total_measure.size(); ++i)
        csv << i << "," << rec.max_measure[i].decimal(20) << "," << rec.total_measure[i].decimal(20) << ","
            << (rec.filling_flags[i] ? 1 : 0) << "\n";
    csv << "n," << rec.n << "\nm," << rec.m << "\nlambda," << rec.lambda.decimal(20) << "\n2l(p)," << 2 * p.length()
        << "\n3zeta*m," << 3 * std::size_t(p.zeta()) * rec.m << "\n";
    if (c.out.empty())
        std::cout << csv.str();
    else {
        std::ofstream(c.out) << csv.str();
        std::cout << "n=" << rec.n << " m=" << rec.m << " lambda=" << rec.lambda.decimal(20) << "\n";
    }
    return OK;
}

int cmd_conjugate(const Config& c)
{
    FlipPath p = load_path(c, c.word1, c.path1);
    FlipPath q = load_path(c, c.word2, c.path2);
    PAConjInvariant a, b;
    try {
        a = pa_invariant(p, c.budget);
        b = pa_invariant(q, c.budget);
    } catch (const std::invalid_argument& e) {
        std::cout << e.what() << "\n";
        return INCONCLUSIVE;
    }
    bool same = p.start() == q.start() && a == b;
    std::cout << (same ? "conjugate" : "not conjugate") << "\n";
    emit(c, {{"conjugate", same}, {"invariant1", io::to_json(a)}, {"invariant2", io::to_json(b)}});
    return same ? OK : REJECTED;
}

// one random digit change inside the first p1 places of a random x_i
int cmd_tamper(const Config& c)
{
    if (c.cert.empty() || c.out.empty()) throw UsageError("tamper needs --cert and --out");
    json j = io::read_file(c.cert);
    std::mt19937_64 rng(c.seed);
    auto& xs = j.at("x");
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng);
    std::string s = xs[i].get<std::string>();
    auto dot = s.find('.');
    std::size_t p1 = j.at("params").at("p1").get<std::size_t>();
    std::size_t pos = dot + 1 + std::uniform_int_distribution<std::size_t>(0, std::min(p1, s.size() - dot - 1) - 1)(rng);
    char d = char('0' + std::uniform_int_distribution<int>(1, 9)(rng));
    s[pos] = char('0' + ((s[pos] - '0') + (d - '0')) % 10);
    xs[i] = s;
    io::write_file(c.out, j);
    std::cout << "changed x" << i << " at fractional digit " << pos - dot << "\n";
    return OK;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"trackcert: certify pseudo-Anosov flip paths"};
    app.require_subcommand(1);
    Config c;
    if (const char* b = std::getenv("TRACKCERT_BUDGET")) c.budget = std::strtoull(b, nullptr, 10);
    auto common = [&](CLI::App* s) {
        s->add_option("--surface", c.surface, "preset: " + [] {
            std::string r;
            for (auto& n : builtin_surface_names()) r += (r.empty() ? "" : ", ") + n;
            return r;
        }());
        s->add_option("--tri", c.tri, "triangulation JSON (with --path)");
        s->add_option("--K", c.K, "rational constant K > 0");
        s->add_option("--budget", c.budget, "step budget (env TRACKCERT_BUDGET)");
        s->add_option("--mode", c.mode, "strict or adaptive")->check(CLI::IsMember({"strict", "adaptive"}));
        s->add_option("--out", c.out, "output file");
        s->add_option("--seed", c.seed, "seed for randomized commands");
    };
    std::map<std::string, std::function<int(const Config&)>> run;
    auto single = [&](const char* name, const char* help, std::function<int(const Config&)> f) {
        auto* s = app.add_subcommand(name, help);
        common(s);
        s->add_option("--word", c.word, "generator word (uppercase = inverse, _ = empty)");
        s->add_option("--path", c.path, "flip path JSON");
        s->add_option("--cert", c.cert, "certificate JSON or directory");
        run[name] = std::move(f);
    };
    single("classify", "Nielsen-Thurston type", cmd_classify);
    single("certify", "generate and verify a certificate", cmd_certify);
    single("verify", "verify a certificate", cmd_verify);
    single("split-seq", "maximal splitting sequence as CSV", cmd_split_seq);
    single("tamper", "perturb one certificate digit", cmd_tamper);
    auto* conj = app.add_subcommand("conjugate", "compare pseudo-Anosov conjugacy invariants");
    common(conj);
    conj->add_option("--word1", c.word1);
    conj->add_option("--word2", c.word2);
    conj->add_option("--path1", c.path1);
    conj->add_option("--path2", c.path2);
    run["conjugate"] = cmd_conjugate;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return e.get_exit_code() == 0 ? r : USAGE;
    }
    try {
        return run.at(app.get_subcommands().front()->get_name())(c);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return INCONCLUSIVE;
    }
}
