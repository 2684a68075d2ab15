// nashloop: command-line front end for the toric Nash blowup toolkit.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nashloop/nashloop.hpp"

namespace {

using namespace nashloop;

enum Exit { kOk = 0, kUsage = 1, kMath = 2, kLimit = 3 };

constexpr const char* kManual = R"(NAME
    nashloop - Nash blowups of affine toric varieties in characteristic p

SYNOPSIS
    nashloop hilbert FILE
    nashloop blowup FILE [--char P] [--normalized]
    nashloop search FILE [--char P] [--max-depth N] [--max-nodes N]
                         [--cycles K[,K...]] [--threads N] [--non-normalized]
                         [--save GRAPH]
    nashloop search --resume GRAPH [--max-depth N] [--max-nodes N] [--save GRAPH]
    nashloop load GRAPH
    nashloop iso FILE1 FILE2
    nashloop verify-paper [--h9 A,B,C,D,E] [--table-char P] [--format text|json]
    nashloop lineage [--max-depth N] [--max-nodes N]
    nashloop --man

CONE FILES
    The first non-comment line is "dim d". Every further line is one
    generator written as d space-separated integers. Optional lines
    "name NAME" and "char P" attach metadata; "char" is the default for
    --char. A '#' starts a comment.

COMMANDS
    hilbert       Print the Hilbert basis of the saturated semigroup
                  Cone(generators) cap Z^d, sorted, one vector per line.
    blowup        List the charts of one Nash blowup step. Hilbert basis
                  elements are numbered h1, h2, ... with the file's
                  generators first, in file order, then the remaining
                  elements in sorted order. Each chart shows its subset,
                  det_p, the set G_A, pointedness and the minimal generators
                  of the chart (of its saturation with --normalized).
    search        Breadth-first search of the normalized Nash blowup graph
                  up to unimodular equivalence, reporting cycles of the
                  requested lengths with certificates.
    load          Print the report of a saved search graph.
    iso           Decide whether two saturated cones are unimodularly
                  equivalent and print a certificate matrix.
    verify-paper  Check the five-dimensional characteristic-3 one-step loop
                  claim by claim; prints a ledger of 11 checks.
    lineage       Search from the Reeves cone in characteristic 3 for the
                  four-dimensional two-step example and print the depth at
                  which it first appears with a certificate. Long running;
                  the default depth limit is 5.

ENVIRONMENT
    NASHLOOP_THREADS   default for --threads (1 if unset)

EXIT STATUS
    0  success; all claims verified
    1  usage or parse error
    2  mathematical check failed (non-pointed input, failed verification,
       non-isomorphic cones)
    3  resource limit hit; the report is truncated
)";

struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

unsigned default_threads() {
  if (const char* env = std::getenv("NASHLOOP_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw Failure(kUsage, std::string("NASHLOOP_THREADS must be a positive integer, got '") +
                              env + "'");
  }
  return 1;
}

ConeFile read_cone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(kUsage, "cannot open " + path);
  try {
    return parse_cone_file(in);
  } catch (const ConeFileError& ex) {
    throw Failure(kUsage, path + ": " + ex.what());
  }
}

AffineSemigroup saturated_semigroup(const ConeFile& f) {
  if (f.generators.empty()) throw Failure(kUsage, "cone file has no generators");
  auto cone = Cone::from_generators(f.dim, f.generators);
  if (!cone.is_pointed()) throw Failure(kMath, "cone is not pointed");
  return AffineSemigroup::saturation_of(cone);
}

Characteristic pick_char(const std::optional<long long>& flag, const ConeFile* f) {
  long long p = flag ? *flag : (f && f->characteristic ? *f->characteristic : 0);
  try {
    return Characteristic(p);
  } catch (const InvalidCharacteristic& ex) {
    throw Failure(kUsage, ex.what());
  }
}

std::string join(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + v.str();
  return s;
}

// --- hilbert -----------------------------------------------------------------

int cmd_hilbert(const std::string& path) {
  auto s = saturated_semigroup(read_cone(path));
  for (const auto& h : s.hilbert_basis()) std::cout << h << '\n';
  return kOk;
}

// --- blowup ------------------------------------------------------------------

int cmd_blowup(const std::string& path, std::optional<long long> pflag, bool normalized) {
  auto f = read_cone(path);
  auto s = saturated_semigroup(f);
  auto p = pick_char(pflag, &f);
  if (!s.generates_full_lattice()) throw Failure(kMath, "cone is not full-dimensional");

  const auto& hb = s.hilbert_basis();
  std::vector<std::size_t> order;  // display position -> index in hb
  for (const auto& g : f.generators) {
    auto it = std::find(hb.begin(), hb.end(), g);
    if (it == hb.end()) continue;
    auto idx = static_cast<std::size_t>(it - hb.begin());
    if (std::find(order.begin(), order.end(), idx) == order.end()) order.push_back(idx);
  }
  for (std::size_t i = 0; i < hb.size(); ++i)
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  std::vector<std::size_t> label(hb.size());
  for (std::size_t k = 0; k < order.size(); ++k) label[order[k]] = k + 1;

  std::cout << "characteristic " << p.value() << '\n';
  for (std::size_t k = 0; k < order.size(); ++k)
    std::cout << "h" << k + 1 << " = " << hb[order[k]] << '\n';

  auto charts = blowup_step(s, p, normalized, default_threads());
  std::sort(charts.begin(), charts.end(), [&](const auto& a, const auto& b) {
    std::vector<std::size_t> la, lb;
    for (auto i : a.subset) la.push_back(label[i]);
    for (auto i : b.subset) lb.push_back(label[i]);
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    return la < lb;
  });
  std::cout << "charts " << charts.size() << '\n';
  for (const auto& c : charts) {
    std::vector<std::size_t> ls;
    for (auto i : c.subset) ls.push_back(label[i]);
    std::sort(ls.begin(), ls.end());
    std::cout << "\nchart {";
    for (std::size_t i = 0; i < ls.size(); ++i) std::cout << (i ? "," : "") << ls[i];
    std::cout << "} det_p = " << c.det_p << (c.pointed ? "" : " (not pointed)") << '\n';
    std::cout << "  G_A: " << join(c.g_union) << '\n';
    if (c.pointed) std::cout << "  generators: " << join(chart_vertex(c, normalized).hilbert_basis()) << '\n';
  }
  return kOk;
}

// --- search ------------------------------------------------------------------

void print_report(const SearchGraph& g, const SearchReport& r) {
  std::cout << "characteristic " << g.config().characteristic.value()
            << (g.config().normalized ? " (normalized)" : " (non-normalized)") << '\n'
            << "nodes " << r.node_count << " (explored " << r.nodes_explored << ")\n"
            << "edges " << r.edges << '\n'
            << "frontier " << r.frontier << '\n'
            << "termination " << to_string(r.termination) << '\n';
  for (auto k : g.config().cycle_lengths) {
    std::size_t count = 0;
    for (const auto& c : r.cycles_found) {
      if (c.length != k) continue;
      ++count;
      std::cout << "cycle of length " << k << ":";
      for (const auto& key : c.keys) std::cout << ' ' << key;
      std::cout << (c.verified ? " (verified)" : " (NOT verified)") << '\n';
      for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = g.edges()[c.edges[i]];
        std::cout << "  edge " << g.nodes()[e.from].key << " -> " << g.nodes()[e.to].key
                  << " chart {";
        const auto& hb = g.nodes()[e.from].representative.hilbert_basis();
        for (std::size_t j = 0; j < e.subset.size(); ++j) std::cout << (j ? " " : "") << hb[e.subset[j]];
        std::cout << "}\n  certificate " << c.certificates[i].matrix << '\n';
      }
    }
    if (count == 0) std::cout << "no cycle of length " << k << '\n';
  }
}

int report_exit(const SearchReport& r) {
  for (const auto& c : r.cycles_found)
    if (!c.verified) return kMath;
  return is_truncated(r.termination) ? kLimit : kOk;
}

void save_graph(const SearchGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Failure(kUsage, "cannot write " + path);
  g.save(out);
}

SearchGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(kUsage, "cannot open " + path);
  try {
    return SearchGraph::load(in);
  } catch (const GraphFormatError& ex) {
    throw Failure(kUsage, path + ": " + ex.what());
  }
}

struct SearchFlags {
  std::string file, resume, save;
  std::optional<long long> p;
  std::optional<std::size_t> max_depth, max_nodes;
  std::vector<std::size_t> cycles;
  std::optional<unsigned> threads;
  bool non_normalized = false;
};

int cmd_search(const SearchFlags& fl) {
  SearchGraph g;
  if (!fl.resume.empty()) {
    if (!fl.file.empty()) throw Failure(kUsage, "give either a cone file or --resume, not both");
    g = load_graph(fl.resume);
    if (fl.p && *fl.p != g.config().characteristic.value())
      throw Failure(kUsage, "--char differs from the saved graph");
    if (!fl.cycles.empty()) g.config().cycle_lengths = {fl.cycles.begin(), fl.cycles.end()};
  } else {
    if (fl.file.empty()) throw Failure(kUsage, "search needs a cone file or --resume GRAPH");
    auto f = read_cone(fl.file);
    SearchConfig cfg;
    cfg.characteristic = pick_char(fl.p, &f);
    cfg.normalized = !fl.non_normalized;
    if (!fl.cycles.empty()) cfg.cycle_lengths = {fl.cycles.begin(), fl.cycles.end()};
    g = SearchGraph(cfg);
    auto s = saturated_semigroup(f);
    if (!s.generates_full_lattice()) throw Failure(kMath, "cone is not full-dimensional");
    g.add_root(s);
  }
  for (auto k : g.config().cycle_lengths)
    if (k == 0) throw Failure(kUsage, "cycle lengths must be positive");
  if (fl.max_depth) g.config().max_depth = *fl.max_depth;
  if (fl.max_nodes) {
    if (*fl.max_nodes == 0) throw Failure(kUsage, "--max-nodes must be positive");
    g.config().max_nodes = *fl.max_nodes;
  }
  g.config().threads = fl.threads ? *fl.threads : default_threads();
  g.run();
  auto r = g.report();
  print_report(g, r);
  if (!fl.save.empty()) save_graph(g, fl.save);
  return report_exit(r);
}

int cmd_load(const std::string& path) {
  auto g = load_graph(path);
  auto r = g.report();
  print_report(g, r);
  return report_exit(r);
}

// --- iso ---------------------------------------------------------------------

int cmd_iso(const std::string& a, const std::string& b) {
  auto sa = saturated_semigroup(read_cone(a));
  auto sb = saturated_semigroup(read_cone(b));
  if (sa.ambient_dim() != sb.ambient_dim()) {
    std::cout << "not isomorphic (ambient dimensions differ)\n";
    return kMath;
  }
  if (!sa.generates_full_lattice() || !sb.generates_full_lattice())
    throw Failure(kMath, "cones must be full-dimensional");
  auto cert = find_isomorphism(sa, sb, IsoOptions{true});
  if (!cert) {
    std::cout << "not isomorphic\n";
    return kMath;
  }
  std::cout << "isomorphic\ncertificate " << cert->matrix << '\n';
  for (auto [i, j] : cert->mapping)
    std::cout << "  " << sa.hilbert_basis()[i] << " -> " << sb.hilbert_basis()[j] << '\n';
  return kOk;
}

// --- verify-paper ------------------------------------------------------------

LatticeVector parse_vector(const std::string& text) {
  std::vector<Integer> entries;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" ()");
    auto e = tok.find_last_not_of(" ()");
    if (b == std::string::npos) throw Failure(kUsage, "bad vector: " + text);
    tok = tok.substr(b, e - b + 1);
    std::size_t digits = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (digits == tok.size() || tok.find_first_not_of("0123456789", digits) != std::string::npos)
      throw Failure(kUsage, "bad vector: " + text);
    entries.emplace_back(Integer(tok[0] == '+' ? tok.substr(1) : tok));
  }
  return LatticeVector(std::move(entries));
}

int cmd_verify(const std::string& h9, long long table_char, const std::string& format) {
  VerifyOptions opts;
  if (!h9.empty()) {
    opts.h9 = parse_vector(h9);
    if (opts.h9.dim() != 5) throw Failure(kUsage, "--h9 needs five entries");
  }
  try {
    Characteristic{table_char};
  } catch (const InvalidCharacteristic& ex) {
    throw Failure(kUsage, ex.what());
  }
  opts.table_characteristic = table_char;
  opts.threads = default_threads();
  auto ledger = verify_paper(opts);
  if (format == "json")
    std::cout << ledger.to_json().dump(2) << '\n';
  else
    std::cout << ledger.render_text();
  return ledger.passed() ? kOk : kMath;
}

// --- lineage -----------------------------------------------------------------

int cmd_lineage(std::size_t max_depth, std::size_t max_nodes) {
  SearchConfig cfg;
  cfg.characteristic = Characteristic(3);
  cfg.max_depth = max_depth;
  cfg.max_nodes = max_nodes;
  cfg.cycle_lengths = {};
  cfg.threads = default_threads();
  SearchGraph g(cfg);
  g.add_root(AffineSemigroup::saturation_of(Cone::from_generators(fixtures::matrix_reeves().columns())));
  auto target =
      AffineSemigroup::saturation_of(Cone::from_generators(fixtures::matrix_dim4char3().columns()));
  g.run();
  auto r = g.report();
  print_report(g, r);
  if (auto hit = g.locate(target)) {
    std::cout << "target found: " << g.nodes()[hit->first].key << " at depth "
              << g.nodes()[hit->first].depth_first_seen << "\ncertificate " << hit->second.matrix
              << '\n';
    return kOk;
  }
  std::cout << "target not found\n";
  return is_truncated(r.termination) ? kLimit : kMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash blowups of affine toric varieties in characteristic p"};
  app.footer("Run 'nashloop --man' for the manual page.");
  app.require_subcommand(1);
  bool manual = false;
  app.add_flag("--man", manual, "Print the manual page and exit");

  std::string file, file2;
  std::optional<long long> p;

  auto* hil = app.add_subcommand("hilbert", "Print the Hilbert basis of a cone");
  hil->add_option("file", file, "Cone file")->required();

  bool normalized = false;
  auto* blo = app.add_subcommand("blowup", "List the charts of one Nash blowup step");
  blo->add_option("file", file, "Cone file")->required();
  blo->add_option("--char", p, "Characteristic (0 or a prime)");
  blo->add_flag("--normalized", normalized, "Show generators of the saturated charts");

  SearchFlags sf;
  auto* sea = app.add_subcommand("search", "Search the normalized Nash blowup graph for cycles");
  sea->add_option("file", sf.file, "Cone file");
  sea->add_option("--char", sf.p, "Characteristic (0 or a prime)");
  sea->add_option("--max-depth", sf.max_depth, "Depth limit (default 4)");
  sea->add_option("--max-nodes", sf.max_nodes, "Node limit (default 10000)");
  sea->add_option("--cycles", sf.cycles, "Cycle lengths to look for (default 1)")->delimiter(',');
  sea->add_option("--threads", sf.threads, "Worker threads for chart computation")
      ->check(CLI::PositiveNumber);
  sea->add_flag("--non-normalized", sf.non_normalized, "Use non-normalized charts as vertices");
  sea->add_option("--save", sf.save, "Write the graph to this file");
  sea->add_option("--resume", sf.resume, "Continue a saved graph");

  auto* lod = app.add_subcommand("load", "Print the report of a saved graph");
  lod->add_option("graph", file, "Graph file")->required();

  auto* iso = app.add_subcommand("iso", "Test two cones for unimodular equivalence");
  iso->add_option("file1", file, "Cone file")->required();
  iso->add_option("file2", file2, "Cone file")->required();

  std::string h9, format = "text";
  long long table_char = 3;
  auto* ver = app.add_subcommand("verify-paper", "Check the five-dimensional one-step loop");
  ver->add_option("--h9", h9, "Override the ninth Hilbert basis element, e.g. 1,1,0,1,-1");
  ver->add_option("--table-char", table_char, "Characteristic for the determinant table");
  ver->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::size_t lin_depth = 5, lin_nodes = 10000;
  auto* lin = app.add_subcommand("lineage", "Search the Reeves cone for the 4d example (slow)");
  lin->add_option("--max-depth", lin_depth, "Depth limit (default 5)");
  lin->add_option("--max-nodes", lin_nodes, "Node limit");

  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--man") {
      std::cout << kManual;
      return kOk;
    }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*hil) return cmd_hilbert(file);
    if (*blo) return cmd_blowup(file, p, normalized);
    if (*sea) return cmd_search(sf);
    if (*lod) return cmd_load(file);
    if (*iso) return cmd_iso(file, file2);
    if (*ver) return cmd_verify(h9, table_char, format);
    if (*lin) return cmd_lineage(lin_depth, lin_nodes);
  } catch (const Failure& f) {
    std::cerr << "nashloop: " << f.what() << '\n';
    return f.code;
  } catch (const NotPointedError& e) {
    std::cerr << "nashloop: " << e.what() << '\n';
    return kMath;
  } catch (const std::exception& e) {
    std::cerr << "nashloop: " << e.what() << '\n';
    return kMath;
  }
  return kUsage;
}
