#include "chainsmith/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chainsmith {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

namespace {

json parse_json_file(const std::filesystem::path& path) {
  return json::parse(read_text_file(path));
}

void dump_json_file(const json& j, const std::filesystem::path& path) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace

LogicalProblem load_logical_problem(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  LogicalProblem p;
  p.resize(j.at("n").get<int>());
  p.offset = j.value("offset", 0.0);
  for (const auto& item : j.value("h", json::array()))
    p.set_bias(item.at("i").get<int>(), item.at("v").get<double>());
  for (const auto& item : j.value("J", json::array()))
    p.add_coupling(item.at("i").get<int>(), item.at("j").get<int>(),
                   item.at("v").get<double>());
  return p;
}

void save_logical_problem(const LogicalProblem& p,
                          const std::filesystem::path& path) {
  json j;
  j["n"] = p.n;
  if (p.offset != 0.0) j["offset"] = p.offset;
  json hs = json::array();
  for (int i = 0; i < p.n; ++i)
    if (p.bias(i) != 0.0) hs.push_back({{"i", i}, {"v", p.bias(i)}});
  j["h"] = hs;
  json js = json::array();
  for (const auto& [e, v] : p.couplings)
    if (v != 0.0) js.push_back({{"i", e.first}, {"j", e.second}, {"v", v}});
  j["J"] = js;
  dump_json_file(j, path);
}

HardwareGraph load_hardware_graph(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  if (j.contains("rows")) {
    ChimeraSpec spec;
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    spec.cell_half = j.at("cell_half").get<int>();
    spec.dead = j.value("dead", std::vector<int>{});
    return build_chimera(spec);
  }
  HardwareGraph g;
  g.num_qubits = j.at("N").get<int>();
  g.active.assign(static_cast<std::size_t>(g.num_qubits), 1);
  for (int d : j.value("dead", std::vector<int>{})) {
    if (d < 0 || d >= g.num_qubits)
      throw std::invalid_argument("hardware: dead index out of range");
    g.active[static_cast<std::size_t>(d)] = 0;
  }
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 0 || a >= g.num_qubits || b < 0 || b >= g.num_qubits)
      throw std::invalid_argument("hardware: edge endpoint out of range");
    if (g.is_active(a) && g.is_active(b)) g.edges.insert(make_edge(a, b));
  }
  return g;
}

void save_hardware_graph(const HardwareGraph& g,
                         const std::filesystem::path& path) {
  json j;
  std::vector<int> dead;
  for (int q = 0; q < g.num_qubits; ++q)
    if (!g.is_active(q)) dead.push_back(q);
  if (g.rows > 0) {
    j["rows"] = g.rows;
    j["cols"] = g.cols;
    j["cell_half"] = g.cell_half;
    j["dead"] = dead;
  } else {
    j["N"] = g.num_qubits;
    j["dead"] = dead;
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
  }
  dump_json_file(j, path);
}

Embedding load_embedding(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  Embedding e;
  for (const auto& chain : j.at("chains"))
    e.chains.push_back(chain.get<std::vector<int>>());
  return e;
}

void save_embedding(const Embedding& e, const std::filesystem::path& path) {
  json j;
  j["chains"] = e.chains;
  dump_json_file(j, path);
}

PhysicalProblem load_physical_problem(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  PhysicalProblem p;
  p.num_qubits = j.at("num_qubits").get<int>();
  p.scale = j.value("scale", 1.0);
  p.zero_problem = j.value("zero_problem", false);
  for (const auto& item : j.value("biases", json::array()))
    p.biases[item.at("q").get<int>()] = item.at("v").get<double>();
  for (const auto& item : j.value("problem_couplings", json::array()))
    p.problem_couplings[make_edge(item.at("a").get<int>(),
                                  item.at("b").get<int>())] =
        item.at("v").get<double>();
  for (const auto& item : j.value("chain_couplings", json::array()))
    p.chain_couplings[make_edge(item.at("a").get<int>(),
                                item.at("b").get<int>())] =
        item.at("v").get<double>();
  return p;
}

void save_physical_problem(const PhysicalProblem& p,
                           const std::filesystem::path& path) {
  json j;
  j["num_qubits"] = p.num_qubits;
  j["scale"] = p.scale;
  if (p.zero_problem) j["zero_problem"] = true;
  json biases = json::array();
  for (const auto& [q, v] : p.biases) biases.push_back({{"q", q}, {"v", v}});
  j["biases"] = biases;
  auto edge_array = [](const std::map<Edge, double>& m) {
    json arr = json::array();
    for (const auto& [e, v] : m)
      arr.push_back({{"a", e.first}, {"b", e.second}, {"v", v}});
    return arr;
  };
  j["problem_couplings"] = edge_array(p.problem_couplings);
  j["chain_couplings"] = edge_array(p.chain_couplings);
  if (!p.warnings.empty()) j["warnings"] = p.warnings;
  dump_json_file(j, path);
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  json j = parse_json_file(path);
  std::vector<ManifestEntry> out;
  for (const auto& item : j.at("instances")) {
    ManifestEntry m;
    m.instance_id = item.at("instance_id").get<std::string>();
    m.n = item.at("n").get<int>();
    m.alpha = item.at("alpha").get<int>();
    m.seed = item.at("seed").get<std::uint64_t>();
    m.solution_count = item.at("solution_count").get<std::uint64_t>();
    m.capped = item.at("capped").get<bool>();
    m.cnf_path = item.at("cnf_path").get<std::string>();
    out.push_back(std::move(m));
  }
  return out;
}

void save_manifest(const std::vector<ManifestEntry>& entries,
                   const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& m : entries)
    arr.push_back({{"instance_id", m.instance_id},
                   {"n", m.n},
                   {"alpha", m.alpha},
                   {"seed", m.seed},
                   {"solution_count", m.solution_count},
                   {"capped", m.capped},
                   {"cnf_path", m.cnf_path}});
  json j;
  j["instances"] = arr;
  dump_json_file(j, path);
}

std::string spins_to_bits(const SpinVector& s) {
  std::string out(s.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) out[i] = '1';
  return out;
}

SpinVector bits_to_spins(const std::string& bits) {
  SpinVector s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw std::invalid_argument("bitstring: invalid character");
    s[i] = bits[i] == '1' ? 1 : -1;
  }
  return s;
}

namespace {

json provenance_to_json(const Provenance& p) {
  json j;
  j["backend"] = p.backend;
  j["seed"] = p.seed;
  if (p.has_schedule) {
    j["schedule"] = {{"sweeps", p.schedule.sweeps},
                     {"beta_start", p.schedule.beta_start},
                     {"beta_end", p.schedule.beta_end},
                     {"reads", p.schedule.reads}};
  }
  if (!p.strategy.empty()) j["strategy"] = p.strategy;
  if (p.chain_coupling != 0.0) j["chain_coupling"] = p.chain_coupling;
  if (p.srt_index >= 0) j["srt_index"] = p.srt_index;
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.backend = j.at("backend").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("schedule")) {
    p.has_schedule = true;
    p.schedule.sweeps = j["schedule"].at("sweeps").get<int>();
    p.schedule.beta_start = j["schedule"].at("beta_start").get<double>();
    p.schedule.beta_end = j["schedule"].at("beta_end").get<double>();
    p.schedule.reads = j["schedule"].at("reads").get<int>();
  }
  p.strategy = j.value("strategy", "");
  p.chain_coupling = j.value("chain_coupling", 0.0);
  p.srt_index = j.value("srt_index", -1);
  return p;
}

}  // namespace

void save_sample_set(const SampleSet& s, const std::filesystem::path& csv_path,
                     const std::filesystem::path& provenance_path) {
  std::ostringstream csv;
  csv << "read_index,bitstring,energy,multiplicity\n";
  for (std::size_t r = 0; r < s.reads.size(); ++r)
    csv << r << ',' << spins_to_bits(s.reads[r].state) << ','
        << format_double(s.reads[r].energy) << ',' << s.reads[r].multiplicity
        << '\n';
  write_text_file(csv_path, csv.str());
  dump_json_file(provenance_to_json(s.provenance), provenance_path);
}

SampleSet load_sample_set(const std::filesystem::path& csv_path,
                          const std::filesystem::path& provenance_path) {
  SampleSet s;
  s.provenance = provenance_from_json(parse_json_file(provenance_path));
  std::istringstream in(read_text_file(csv_path));
  std::string line;
  if (!std::getline(in, line) || line != "read_index,bitstring,energy,multiplicity")
    throw std::invalid_argument("sample csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string idx, bits, energy_s, mult;
    if (!std::getline(ls, idx, ',') || !std::getline(ls, bits, ',') ||
        !std::getline(ls, energy_s, ',') || !std::getline(ls, mult))
      throw std::invalid_argument("sample csv: bad row: " + line);
    Read r;
    r.state = bits_to_spins(bits);
    r.energy = std::stod(energy_s);
    r.multiplicity = std::stoi(mult);
    s.reads.push_back(std::move(r));
  }
  return s;
}

}  // namespace chainsmith
