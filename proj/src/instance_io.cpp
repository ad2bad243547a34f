#include "qdlab/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace qdlab {

namespace {

void write_noise_and_syndrome(std::ostringstream& out, const DecodingInstance& inst) {
  out << "noise " << inst.noise.qubits.size() << "\n";
  for (const auto& [q, qn] : inst.noise.qubits)
    out << "qubit " << q << " " << qn.pX.to_string() << " " << qn.pY.to_string() << " "
        << qn.pZ.to_string() << "\n";
  out << "syndrome " << inst.syndrome.size() << "\n";
  for (uint32_t g : inst.syndrome) out << "g " << g << "\n";
}

}  // namespace

std::string serialize_instance(const DecodingInstance& inst) {
  std::ostringstream out;
  out << "qdlab-instance 1\n";
  out << "grid " << inst.layout.w << " " << inst.layout.h << "\n";
  out << "order row-col-kind\n";
  out << "mode raw\n";
  write_noise_and_syndrome(out, inst);
  out << "end\n";
  return out.str();
}

std::string serialize_instance(const CompiledInstance& inst) {
  std::ostringstream out;
  out << "qdlab-instance 1\n";
  out << "grid " << inst.layout.w << " " << inst.layout.h << "\n";
  out << "order row-col-kind\n";
  out << "mode " << inst.mode.tag_name() << "\n";
  out << "p " << inst.mode.p.to_string() << "\n";
  if (inst.mode.is_dqmld()) out << "r " << inst.mode.r.to_string() << "\n";
  if (inst.mode.M) out << "M " << inst.mode.M->to_string() << "\n";
  out << "ell " << inst.ell << "\n";
  if (inst.extension_length) out << "extension " << inst.extension_length << "\n";
  DecodingInstance view{inst.layout, inst.noise, inst.syndrome};
  write_noise_and_syndrome(out, view);
  if (inst.special_qubit) out << "special " << *inst.special_qubit << "\n";
  out << "readout " << inst.readout_qubit << "\n";
  out << "output-col " << inst.output_col << "\n";
  out << "sidecar\n";
  out << "expression " << inst.expression << "\n";
  out << "num-vars " << inst.num_vars << "\n";
  for (const auto& pl : inst.placements)
    out << "placement " << pl.gadget << " " << pl.node << " " << pl.col << " " << pl.row << "\n";
  for (const auto& rt : inst.routes)
    out << "route " << rt.kind << " " << rt.fixed << " " << rt.from << " " << rt.to << " "
        << rt.label << "\n";
  out << "output-wire";
  for (uint32_t q : inst.output_wire) out << " " << q;
  out << "\n";
  for (const auto& [v, q] : inst.variable_ports) out << "variable-port " << v << " " << q << "\n";
  out << "end\n";
  return out.str();
}

LoadedInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("instance line " + std::to_string(lineno) + ": " + msg);
  };
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) fail(std::string("unexpected end, wanted ") + what);
    ++lineno;
    return std::istringstream(line);
  };

  {
    auto ls = next("header");
    std::string tag;
    int version = 0;
    ls >> tag >> version;
    if (tag != "qdlab-instance") fail("not an instance file");
    if (version != 1) fail("unsupported format version " + std::to_string(version));
  }
  uint32_t w = 0, h = 0;
  {
    auto ls = next("grid");
    std::string tag;
    ls >> tag >> w >> h;
    if (tag != "grid" || w < 2 || h < 2) fail("bad grid line");
  }
  {
    auto ls = next("order");
    std::string tag, order;
    ls >> tag >> order;
    if (tag != "order" || order != "row-col-kind") fail("unknown generator ordering");
  }
  CompileMode mode;
  bool raw = false;
  {
    auto ls = next("mode");
    std::string tag, name;
    ls >> tag >> name;
    if (tag != "mode") fail("bad mode line");
    if (name == "raw")
      raw = true;
    else
      mode.tag = CompileMode::tag_from_name(name);
  }

  DecodingInstance dec;
  dec.layout = build_rotated_layout(w, h);
  dec.noise.num_qubits = w * h;
  uint64_t ell = 0, extension = 0;
  std::optional<uint32_t> special;
  uint32_t readout = 0;
  bool have_sidecar = false;
  std::string expression;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p")
      { std::string v; ls >> v; mode.p = ExactRational::parse(v); }
    else if (tag == "r")
      { std::string v; ls >> v; mode.r = ExactRational::parse(v); }
    else if (tag == "M")
      { std::string v; ls >> v; mode.M = ExactRational::parse(v); }
    else if (tag == "ell")
      ls >> ell;
    else if (tag == "extension")
      ls >> extension;
    else if (tag == "noise" || tag == "syndrome")
      ;  // counts are advisory; entries follow on their own lines
    else if (tag == "qubit") {
      uint32_t q = 0;
      std::string x, y, z;
      ls >> q >> x >> y >> z;
      if (!ls || q >= w * h) fail("bad qubit line");
      QubitNoise qn;
      qn.pX = ExactRational::parse(x);
      qn.pY = ExactRational::parse(y);
      qn.pZ = ExactRational::parse(z);
      dec.noise.qubits[q] = qn;
    } else if (tag == "g") {
      uint32_t g = 0;
      ls >> g;
      if (!ls || g >= dec.layout.generators.size()) fail("bad generator index");
      dec.syndrome.insert(g);
    } else if (tag == "special") {
      uint32_t q = 0;
      ls >> q;
      special = q;
    } else if (tag == "readout")
      ls >> readout;
    else if (tag == "output-col")
      ;  // regenerated by recompilation
    else if (tag == "sidecar")
      have_sidecar = true;
    else if (tag == "expression") {
      std::getline(ls >> std::ws, expression);
    } else if (tag == "num-vars" || tag == "placement" || tag == "route" ||
               tag == "output-wire" || tag == "variable-port")
      ;  // regenerated by recompilation
    else if (tag == "end")
      break;
    else if (!tag.empty())
      fail("unknown directive '" + tag + "'");
  }
  dec.noise.validate();

  LoadedInstance loaded;
  loaded.decoding = std::move(dec);
  if (!raw) {
    if (!have_sidecar || expression.empty())
      throw std::invalid_argument("compiled instance file lacks its expression sidecar");
    CompiledInstance rebuilt = compile_formula(parse_expression(expression), mode);
    std::string round = serialize_instance(rebuilt);
    if (round != text)
      throw VerificationError(
          "instance file does not match the recompilation of its own sidecar expression");
    (void)ell;
    (void)extension;
    (void)special;
    (void)readout;
    loaded.decoding = decoding_view(rebuilt);
    loaded.compiled = std::move(rebuilt);
  }
  return loaded;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace qdlab
