// Command-line front end for the pdom library.
//
// Exit status: 0 on success, 1 on a negative verdict, 2 on usage or input errors.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdom.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) pdom::fail(pdom::Errc::syntax_error, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) pdom::fail(pdom::Errc::syntax_error, "cannot write '" + path + "'");
  out << text;
}

/// Loaded inputs, keyed by file path. Valuations and maps share their poset.
class Workspace {
 public:
  const pdom::PosetPtr& poset(const std::string& path) {
    auto it = posets_.find(path);
    if (it == posets_.end()) it = posets_.emplace(path, pdom::share(pdom::parse_poset(read_file(path)))).first;
    return it->second;
  }

  const pdom::SimpleValuation& valuation(const std::string& path, const pdom::PosetPtr& base) {
    auto it = valuations_.find(path);
    if (it == valuations_.end()) it = valuations_.emplace(path, pdom::parse_valuation(read_file(path), base)).first;
    return it->second;
  }

  const pdom::RepresentationMap& map(const std::string& path, const pdom::PosetPtr& base) {
    auto it = maps_.find(path);
    if (it == maps_.end()) it = maps_.emplace(path, pdom::parse_map(read_file(path), base)).first;
    return it->second;
  }

 private:
  std::map<std::string, pdom::PosetPtr> posets_;
  std::map<std::string, pdom::SimpleValuation> valuations_;
  std::map<std::string, pdom::RepresentationMap> maps_;
};

struct Options {
  std::string poset;
  std::string mu;
  std::string nu;
  std::string seq;
  std::string out;
  std::string dot;
  std::string map;
  std::string quantile;
  std::uint32_t K = 3;
  std::uint64_t seed = 0;
  std::uint64_t count = 1000;
  std::size_t from = 0;
  bool normalized = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  int emit(const std::string& text, int status) {
    if (o_.out.empty()) {
      std::cout << text;
    } else {
      write_file(o_.out, text);
    }
    return status;
  }

  const pdom::PosetPtr& base() { return ws_.poset(o_.poset); }
  const pdom::SimpleValuation& mu() { return ws_.valuation(o_.mu, base()); }
  const pdom::SimpleValuation& nu() { return ws_.valuation(o_.nu, base()); }

  std::vector<pdom::SimpleValuation> sequence() {
    std::vector<pdom::SimpleValuation> out;
    for (const auto& path : split_list(o_.seq)) out.push_back(ws_.valuation(path, base()));
    if (out.empty()) pdom::fail(pdom::Errc::syntax_error, "--seq lists no valuation files");
    return out;
  }

  int order() {
    const auto d = pdom::decide_order(mu(), nu());
    std::ostringstream os;
    os << "LEQ: " << (d.leq ? "true" : "false") << "\n";
    if (d.leq) {
      os << plan_text(*d.plan);
    } else {
      os << "witness " << d.witness->to_string() << " mu " << pdom::evaluate(mu(), *d.witness) << " nu "
         << pdom::evaluate(nu(), *d.witness) << "\n";
    }
    if (!o_.dot.empty()) {
      auto on = pdom::detail::order_network(mu(), nu());
      write_file(o_.dot, pdom::network_to_dot(on.net, &d.solution.flow));
    }
    return emit(os.str(), d.leq ? kOk : kNegative);
  }

  int waybelow() {
    const auto d = pdom::decide_way_below(mu(), nu(), o_.normalized);
    std::ostringstream os;
    os << "WAYBELOW: " << (d.holds ? "true" : "false") << "\n";
    os << "mode " << (o_.normalized ? "probability" : "subprobability") << "\n";
    if (d.epsilon_exponent) os << "epsilon 1/2^" << *d.epsilon_exponent << "\n";
    if (!d.holds && !d.violating_subset.empty()) {
      os << "violating-subset {";
      for (std::size_t i = 0; i < d.violating_subset.size(); ++i) {
        os << (i ? "," : "") << base()->name(d.violating_subset[i]);
      }
      os << "}\n";
    }
    return emit(os.str(), d.holds ? kOk : kNegative);
  }

  int transport() { return emit(plan_text(pdom::transport_plan(mu(), nu())), kOk); }

  int classify() {
    const auto c = pdom::classify(*base());
    std::ostringstream os;
    os << "chain: " << std::boolalpha << c.is_chain << "\n";
    os << "bounded-complete: " << c.is_bounded_complete << "\n";
    os << "lattice: " << c.is_lattice << "\n";
    if (!o_.dot.empty()) write_file(o_.dot, base()->to_dot());
    return emit(os.str(), kOk);
  }

  int schedule() { return emit(pdom::print_schedule(pdom::build_schedule(mu(), o_.K)), kOk); }

  int represent() {
    const auto map = pdom::represent(pdom::build_schedule(mu(), o_.K));
    if (!o_.dot.empty()) write_file(o_.dot, map.to_dot());
    return emit(pdom::print_map(map), kOk);
  }

  int sample() {
    std::optional<pdom::RepresentationMap> built;
    const pdom::RepresentationMap* map = nullptr;
    if (!o_.map.empty()) {
      map = &ws_.map(o_.map, base());
    } else {
      built = pdom::represent(pdom::build_schedule(mu(), o_.K));
      map = &*built;
    }
    pdom::SeededBits bits(o_.seed);
    std::vector<std::uint64_t> counts(base()->size(), 0);
    for (std::uint64_t i = 0; i < o_.count; ++i) ++counts[pdom::sample(*map, bits)];
    std::ostringstream os;
    os << "seed " << o_.seed << "\ndraws " << o_.count << "\n";
    for (pdom::Element x = 0; x < counts.size(); ++x) os << "count " << base()->name(x) << " " << counts[x] << "\n";
    return emit(os.str(), kOk);
  }

  int converge() {
    const auto seq = sequence();
    const auto rep = pdom::represent_sequence(seq, mu(), o_.K, o_.from);
    std::uint32_t depth = rep.limit_map.depth();
    for (const auto& m : rep.maps) depth = std::max(depth, m.depth());
    const auto report = pdom::convergence_check(rep.maps, rep.limit_map, pdom::grid_words(depth));
    return emit(report.to_text(*base()), report.ok() ? kOk : kNegative);
  }

  int skorohod() {
    std::ostringstream os;
    if (!o_.seq.empty()) {
      const auto out = pdom::skorohod_sequence(sequence(), mu(), o_.K, o_.from);
      os << "grid-depth " << out.grid_depth << "\n" << out.report.to_text(*base());
      return emit(os.str(), out.report.ok() ? kOk : kNegative);
    }
    const auto& target = mu();
    const auto witness =
        target.is_probability() ? pdom::skorohod(target, o_.K) : pdom::skorohod_subprobability(target, o_.K);
    os << witness.to_text();
    os << "law\n" << pdom::print_valuation(witness.restricted_tabulation());
    return emit(os.str(), kOk);
  }

  int cdf() {
    const auto f = pdom::cdf(mu());
    std::ostringstream os;
    for (pdom::Element x : pdom::chain_order(*base())) os << "F " << base()->name(x) << " " << f(x) << "\n";
    return emit(os.str(), kOk);
  }

  int quantile() { return emit(pdom::print_quantile(pdom::lower_adjoint(pdom::cdf(mu()))), kOk); }

  int pushforward_lebesgue() {
    const auto g = pdom::parse_quantile(read_file(o_.quantile), base());
    return emit(pdom::print_valuation(pdom::pushforward_lebesgue(g)), kOk);
  }

  int portmanteau() {
    const auto report = pdom::portmanteau_check(sequence(), mu(), o_.from);
    return emit(report.to_text(), report.pass ? kOk : kNegative);
  }

 private:
  std::string plan_text(const pdom::TransportPlan& plan) {
    std::ostringstream os;
    for (const auto& e : plan.entries()) {
      os << "transport " << base()->name(e.from) << " " << base()->name(e.to) << " " << e.amount << "\n";
    }
    return os.str();
  }

  const Options& o_;
  Workspace ws_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simple valuations on finite posets: order, way-below, Cantor-tree representations"};
  app.require_subcommand(1);
  Options o;

  auto add_poset = [&](CLI::App* cmd) { cmd->add_option("--poset", o.poset, "poset file")->required(); };
  auto add_mu = [&](CLI::App* cmd, const char* help) { cmd->add_option("--mu", o.mu, help)->required(); };
  auto add_nu = [&](CLI::App* cmd) { cmd->add_option("--nu", o.nu, "valuation file")->required(); };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "write the result to this file"); };
  auto add_K = [&](CLI::App* cmd) { cmd->add_option("--K", o.K, "schedule length")->check(CLI::Range(1u, 16u)); };
  auto add_seq = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--seq", o.seq, "comma-separated valuation files");
    if (required) opt->required();
  };
  auto add_from = [&](CLI::App* cmd) { cmd->add_option("--from", o.from, "first index of the tail"); };

  std::map<CLI::App*, int (Runner::*)()> handlers;
  auto command = [&](const char* name, const char* help, int (Runner::*handler)()) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_poset(cmd);
    add_out(cmd);
    handlers[cmd] = handler;
    return cmd;
  };

  auto* order = command("order", "decide mu <= nu by max-flow", &Runner::order);
  add_mu(order, "valuation file");
  add_nu(order);
  order->add_option("--dot", o.dot, "write the flow network as DOT");

  auto* waybelow = command("waybelow", "decide mu << nu", &Runner::waybelow);
  add_mu(waybelow, "valuation file");
  add_nu(waybelow);
  waybelow->add_flag("--normalized", o.normalized, "decide in the probability valuations");

  auto* transport = command("transport", "print transport numbers for mu <= nu", &Runner::transport);
  add_mu(transport, "valuation file");
  add_nu(transport);

  auto* classify = command("classify", "chain / bounded-complete / lattice flags", &Runner::classify);
  classify->add_option("--dot", o.dot, "write the Hasse diagram as DOT");

  auto* schedule = command("schedule", "approximation schedule for a probability valuation", &Runner::schedule);
  add_mu(schedule, "target valuation file");
  add_K(schedule);

  auto* represent = command("represent", "build a Cantor-tree representation map", &Runner::represent);
  add_mu(represent, "target valuation file");
  add_K(represent);
  represent->add_option("--dot", o.dot, "write the layer tables as DOT");

  auto* sample = command("sample", "draw from a representation map with seeded bits", &Runner::sample);
  sample->add_option("--mu", o.mu, "target valuation file (ignored with --map)");
  sample->add_option("--map", o.map, "serialized representation map");
  add_K(sample);
  sample->add_option("--seed", o.seed, "random seed");
  sample->add_option("--count", o.count, "number of draws");

  auto* converge = command("converge", "pointwise convergence of represented sequences", &Runner::converge);
  add_seq(converge, true);
  add_mu(converge, "limit valuation file");
  add_K(converge);
  add_from(converge);

  auto* skorohod = command("skorohod", "unit-interval sampler and its grid law", &Runner::skorohod);
  add_mu(skorohod, "target (or limit, with --seq) valuation file");
  add_K(skorohod);
  add_seq(skorohod, false);
  add_from(skorohod);

  auto* cdf = command("cdf", "cumulative distribution function on a chain", &Runner::cdf);
  add_mu(cdf, "valuation file");

  auto* quantile = command("quantile", "lower adjoint of the CDF as breakpoints", &Runner::quantile);
  add_mu(quantile, "valuation file");

  auto* pushforward =
      command("pushforward-lebesgue", "law of a quantile map under Lebesgue measure", &Runner::pushforward_lebesgue);
  pushforward->add_option("--quantile", o.quantile, "quantile map file")->required();

  auto* portmanteau = command("portmanteau", "finite-tail Portmanteau check", &Runner::portmanteau);
  add_seq(portmanteau, true);
  add_mu(portmanteau, "limit valuation file");
  add_from(portmanteau);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  for (const auto& [cmd, handler] : handlers) {
    if (!cmd->parsed()) continue;
    if (cmd == sample && o.map.empty() && o.mu.empty()) {
      std::cerr << "sample needs --map or --mu\n";
      return kUsage;
    }
    Runner runner(o);
    try {
      return (runner.*handler)();
    } catch (const pdom::Error& e) {
      std::cerr << e.what() << "\n";
      const bool verdict = e.code() == pdom::Errc::not_comparable || e.code() == pdom::Errc::not_convergent;
      return verdict ? kNegative : kUsage;
    }
  }
  return kUsage;
}
