// dipw: command-line front-end. Exit codes: 0 success or decided-yes,
// 1 decided-no / rejected / check failed, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dipw/error.hpp"
#include "dipw/obstacles.hpp"
#include "dipw/oracle.hpp"
#include "dipw/rng.hpp"
#include "dipw/sampler.hpp"
#include "dipw/solver.hpp"

namespace {

using namespace dipw;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

/// Parse failures are reported with the file name in front of the line number.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Digraph load_digraph(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return read_digraph(t); });
}

/// Undirected input, or the non-adjacency graph of a digraph input.
UGraph load_ugraph(const std::string& path, bool undirected) {
  if (undirected) return parse_file(path, [](const std::string& t) { return read_ugraph(t); });
  return non_adjacency_graph(load_digraph(path));
}

std::string join(const std::vector<Vertex>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vs[i]);
  }
  return out;
}

SolveOptions trace_options(bool verbose) {
  SolveOptions opts;
  if (verbose) {
    opts.trace = [](const TraceEvent& ev) {
      std::fprintf(stderr, "depth=%zu |S|=%zu |T|=%zu gamma=%zu mu=%zu action=%s\n", ev.depth, ev.s->count(),
                   ev.t->count(), ev.gamma, ev.mu, to_string(ev.action));
    };
  }
  return opts;
}

struct Options {
  std::string input;
  std::string output;
  std::string emit;
  std::string certificate;
  std::string decomposition;
  std::string csv;
  std::string kind = "random";
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t h = 0;
  std::size_t n = 0;
  std::size_t total = 0;
  std::size_t band = 1;
  std::size_t cap = kDefaultOracleCap;
  std::size_t trials = 100000;
  std::size_t runs = 1;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  double density = 0.5;
  double confidence = 0.999;
  std::vector<std::size_t> set_sizes{5, 10};
  bool undirected = false;
  bool verbose = false;
};

int pw_decide(const Options& o) {
  const Digraph g = load_digraph(o.input);
  const SolveResult res = solve(g, o.k, trace_options(o.verbose));
  if (!res.found()) {
    std::cout << "no\n";
    return kNo;
  }
  std::cout << "yes " << res.decomposition->width() << '\n';
  if (!o.emit.empty()) dump(o.emit, write_decomposition(*res.decomposition));
  return kYes;
}

int pw_compute(const Options& o) {
  const Digraph g = load_digraph(o.input);
  const PathwidthResult res = compute_pathwidth(g, trace_options(o.verbose));
  std::cout << res.width << '\n';
  if (!o.emit.empty()) dump(o.emit, write_decomposition(res.decomposition));
  return kYes;
}

int pw_oracle(const Options& o) {
  const Digraph g = load_digraph(o.input);
  std::cout << oracle_pathwidth(g, o.cap) << '\n';
  return kYes;
}

int pw_verify(const Options& o, bool has_k) {
  const Digraph g = load_digraph(o.input);
  const PathDecomposition pd =
      parse_file(o.decomposition, [&](const std::string& t) { return read_decomposition(t, g.order()); });
  const DecompositionReport rep = validate_decomposition(g, pd);
  if (!rep.valid) {
    std::cout << "invalid: " << rep.violation << '\n';
    return kNo;
  }
  if (has_k && rep.width > o.k) {
    std::cout << "valid width " << rep.width << " exceeds " << o.k << '\n';
    return kNo;
  }
  std::cout << "valid width " << rep.width << '\n';
  return kYes;
}

int gen(const Options& o, bool has_seed) {
  const bool randomized = o.kind == "random" || o.kind == "h-semicomplete" || o.kind == "banded";
  if (randomized && !has_seed) throw CLI::ValidationError("--seed", "required for kind " + o.kind);
  Digraph g;
  if (o.kind == "random") {
    g = random_digraph(o.n, o.density, o.seed);
  } else if (o.kind == "h-semicomplete") {
    g = random_h_semicomplete(o.n, o.h, o.seed);
  } else if (o.kind == "banded") {
    g = random_banded_h_semicomplete(o.n, o.h, o.band, o.seed);
  } else if (o.kind == "cycle") {
    g = directed_cycle(o.n);
  } else if (o.kind == "path") {
    g = directed_path(o.n);
  } else if (o.kind == "tournament") {
    g = transitive_tournament(o.n);
  } else {
    g = complete_biorientation(o.n);
  }
  dump(o.output, write_digraph(g));
  return kYes;
}

int report_certificate(const Digraph& g, const Obstacle& cert, const std::string& emit) {
  const Verdict v = verify(g, cert);
  if (!v) {
    std::cout << "rejected: " << v.diagnosis << '\n';
    return kNo;
  }
  std::cout << "lower bound " << *v.lower_bound << '\n';
  if (!emit.empty()) dump(emit, write_certificate(cert));
  return kYes;
}

int find_degree(const Options& o) {
  const Digraph g = load_digraph(o.input);
  const auto cert = find_degree_tangle(g, o.k);
  if (!cert) {
    std::cout << "none\n";
    return kNo;
  }
  return report_certificate(g, *cert, o.emit);
}

int find_matching(const Options& o, bool has_d) {
  const Digraph g = load_digraph(o.input);
  const auto cert = has_d ? find_matching_tangle(g, o.d, o.k) : find_best_matching_tangle(g, o.k);
  if (!cert) {
    std::cout << "none\n";
    return kNo;
  }
  return report_certificate(g, *cert, o.emit);
}

int obstacle_verify(const Options& o) {
  const Digraph g = load_digraph(o.input);
  const Obstacle cert =
      parse_file(o.certificate, [&](const std::string& t) { return read_certificate(t, g.order()); });
  return report_certificate(g, cert, "");
}

/// Best lower bound over every certificate family the finders produce.
int obstacle_bound(const Options& o) {
  const Digraph g = load_digraph(o.input);
  require_semicomplete(g, "obstacle bound");
  std::size_t best = degree_interval_lower_bound(g);
  std::cout << "degree-interval " << best << '\n';
  std::size_t degree_best = 0;
  std::size_t matching_best = 0;
  for (std::size_t k = 0; k < g.order(); ++k) {
    if (auto c = find_degree_tangle(g, k)) degree_best = std::max(degree_best, verify(g, *c).lower_bound.value_or(0));
    if (auto c = find_best_matching_tangle(g, k)) {
      matching_best = std::max(matching_best, verify(g, *c).lower_bound.value_or(0));
    }
  }
  std::size_t spider_best = 0;
  if (auto c = find_spider(g)) spider_best = verify(g, *c).lower_bound.value_or(0);
  std::cout << "degree-tangle " << degree_best << '\n'
            << "matching-tangle " << matching_best << '\n'
            << "spider " << spider_best << '\n';
  best = std::max({best, degree_best, matching_best, spider_best});
  std::cout << "best " << best << '\n';
  return kYes;
}

int complete_regular(const Options& o) {
  const UGraph g = load_ugraph(o.input, o.undirected);
  dump(o.output, write_ugraph(regular_completion(g, o.d, o.total)));
  return kYes;
}

std::size_t degree_bound(const Options& o, bool has_d, const UGraph& g) { return has_d ? o.d : g.max_degree(); }

int sample(const Options& o, bool has_d) {
  const UGraph g = load_ugraph(o.input, o.undirected);
  const VertexSet set = sample_independent_set(g, degree_bound(o, has_d, g), o.seed);
  std::cout << join(set.members()) << '\n';
  return kYes;
}

int stats(const Options& o, bool has_d) {
  const UGraph g = load_ugraph(o.input, o.undirected);
  const std::size_t n = g.order();
  SplitMix64 rng(derive_seed(o.seed, 0xfeed));
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  for (std::size_t j = n; j > 1; --j) std::swap(perm[j - 1], perm[rng.below(j)]);
  std::vector<VertexSet> sets;
  for (std::size_t size : o.set_sizes) {
    if (size == 0 || size > n) throw InputError("target set size " + std::to_string(size) + " not in 1..n");
    sets.emplace_back(n, std::vector<Vertex>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size)));
  }
  if (n > 0) sets.push_back(VertexSet::full(n));
  const MarginalReport rep =
      marginal_and_tail_check(g, degree_bound(o, has_d, g), o.trials, sets, o.seed, o.jobs, o.confidence);
  std::cout << rep.to_table();
  if (!o.csv.empty()) dump(o.csv, rep.to_csv());
  return rep.marginals_ok() && rep.tails_ok() ? kYes : kNo;
}

int survival(const Options& o) {
  const Digraph g = load_digraph(o.input);
  std::vector<SurvivalReport> reports(o.runs);
  std::vector<std::thread> pool;
  std::mutex failure_lock;
  std::exception_ptr failure;
  const std::size_t jobs = std::max<std::size_t>(1, std::min(o.jobs, o.runs));
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t r = w * o.runs / jobs; r < (w + 1) * o.runs / jobs; ++r) {
          reports[r] = survival_experiment(g, o.h, o.k, derive_seed(o.seed, r));
        }
      } catch (...) {
        const std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::cout << "run,n,h,tangle_size,tangle_window,sample_size,survivors,expected_survivors,degree_spread,"
               "sample_semicomplete\n";
  for (std::size_t r = 0; r < o.runs; ++r) {
    const SurvivalReport& s = reports[r];
    std::printf("%zu,%zu,%zu,%zu,%zu,%zu,%zu,%.6f,%zu,%d\n", r, s.n, s.h, s.tangle_size, s.tangle_window,
                s.sample_size, s.survivors, s.expected_survivors, s.degree_spread, s.sample_semicomplete ? 1 : 0);
  }
  return kYes;
}

int run(int argc, char** argv) {
  CLI::App app{"Directed pathwidth, obstacles and uniform-marginal independent sets"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* c) { c->add_option("-i,--input", o.input, "Input graph file")->required()->check(CLI::ExistingFile); };
  auto seed = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--seed", o.seed, "RNG seed");
    if (required) opt->required();
    return opt;
  };
  auto undirected = [&](CLI::App* c) {
    c->add_flag("--undirected", o.undirected, "Input is an undirected edge list (default: digraph, use its non-adjacency graph)");
  };

  auto* pw = app.add_subcommand("pw", "Pathwidth decision, computation and verification");
  pw->require_subcommand(1);
  auto* decide = pw->add_subcommand("decide", "Decide pw <= k");
  input(decide);
  decide->add_option("-k,--k", o.k, "Width bound")->required();
  decide->add_option("--emit", o.emit, "Write the decomposition here");
  decide->add_flag("-v,--verbose", o.verbose, "Trace recursion events on stderr");
  auto* compute = pw->add_subcommand("compute", "Compute pw exactly");
  input(compute);
  compute->add_option("--emit", o.emit, "Write the decomposition here");
  compute->add_flag("-v,--verbose", o.verbose, "Trace recursion events on stderr");
  auto* oracle = pw->add_subcommand("oracle", "Subset dynamic program (exponential)");
  input(oracle);
  oracle->add_option("--cap", o.cap, "Refuse graphs larger than this");
  auto* pw_ver = pw->add_subcommand("verify", "Validate a path-decomposition");
  input(pw_ver);
  pw_ver->add_option("--decomposition", o.decomposition, "Decomposition file")->required()->check(CLI::ExistingFile);
  auto* verify_k = pw_ver->add_option("-k,--k", o.k, "Also require width <= k");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a digraph");
  gen_cmd->add_option("--kind", o.kind, "Graph family")
      ->check(CLI::IsMember({"random", "h-semicomplete", "banded", "cycle", "path", "tournament", "complete"}));
  gen_cmd->add_option("-n,--n", o.n, "Order")->required();
  gen_cmd->add_option("--h", o.h, "Maximum non-neighbours per vertex");
  gen_cmd->add_option("--band", o.band, "Band width for banded graphs");
  gen_cmd->add_option("--density", o.density, "Edge probability for random digraphs")->check(CLI::Range(0.0, 1.0));
  auto* gen_seed = seed(gen_cmd, false);
  gen_cmd->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* obstacle = app.add_subcommand("obstacle", "Lower-bound certificates for semicomplete digraphs");
  obstacle->require_subcommand(1);
  auto* fdt = obstacle->add_subcommand("find-degree-tangle", "Search for a (l, k) degree tangle");
  input(fdt);
  fdt->add_option("-k,--k", o.k, "Window width")->required();
  fdt->add_option("--emit", o.emit, "Write the certificate here");
  auto* fmt = obstacle->add_subcommand("find-matching-tangle", "Search for a matching tangle");
  input(fmt);
  fmt->add_option("-k,--k", o.k, "Degree gap")->required();
  auto* fmt_d = fmt->add_option("-d,--d", o.d, "Degree threshold (default: best over all)");
  fmt->add_option("--emit", o.emit, "Write the certificate here");
  auto* ov = obstacle->add_subcommand("verify", "Verify a certificate");
  input(ov);
  ov->add_option("--certificate", o.certificate, "Certificate file")->required()->check(CLI::ExistingFile);
  auto* ob = obstacle->add_subcommand("bound", "Best lower bound from all certificate families");
  input(ob);

  auto* cr = app.add_subcommand("complete-regular", "Complete to a d-regular graph");
  input(cr);
  undirected(cr);
  cr->add_option("-d,--d", o.d, "Degree")->required();
  cr->add_option("-N,--N", o.total, "Total vertex count")->required();
  cr->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* smp = app.add_subcommand("sample", "Draw one independent set");
  input(smp);
  undirected(smp);
  auto* smp_d = smp->add_option("-d,--d", o.d, "Degree bound (default: maximum degree)");
  seed(smp, true);

  auto* st = app.add_subcommand("stats", "Monte-Carlo marginal and tail check");
  input(st);
  undirected(st);
  auto* st_d = st->add_option("-d,--d", o.d, "Degree bound (default: maximum degree)");
  seed(st, true);
  st->add_option("--trials", o.trials, "Number of samples")->check(CLI::PositiveNumber);
  st->add_option("--set-sizes", o.set_sizes, "Sizes of random target sets (the full set is always added)")
      ->delimiter(',');
  st->add_option("--confidence", o.confidence, "Confidence of the per-vertex intervals")->check(CLI::Range(0.0, 1.0));
  st->add_option("--csv", o.csv, "Write tail rows as CSV here");
  st->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* sv = app.add_subcommand("survival", "Tangle survival under independent-set sampling");
  input(sv);
  sv->add_option("--h", o.h, "h of the h-semicomplete input")->required();
  sv->add_option("-k,--k", o.k, "Tangle window")->required();
  seed(sv, true);
  sv->add_option("--runs", o.runs, "Number of runs")->check(CLI::PositiveNumber);
  sv->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (decide->parsed()) return pw_decide(o);
    if (compute->parsed()) return pw_compute(o);
    if (oracle->parsed()) return pw_oracle(o);
    if (pw_ver->parsed()) return pw_verify(o, verify_k->count() > 0);
    if (gen_cmd->parsed()) return gen(o, gen_seed->count() > 0);
    if (fdt->parsed()) return find_degree(o);
    if (fmt->parsed()) return find_matching(o, fmt_d->count() > 0);
    if (ov->parsed()) return obstacle_verify(o);
    if (ob->parsed()) return obstacle_bound(o);
    if (cr->parsed()) return complete_regular(o);
    if (smp->parsed()) return sample(o, smp_d->count() > 0);
    if (st->parsed()) return stats(o, st_d->count() > 0);
    if (sv->parsed()) return survival(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
