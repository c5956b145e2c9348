#include "ssdlab/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "ssdlab/binary_io.hpp"
#include "ssdlab/errors.hpp"

namespace ssdlab {

namespace {
constexpr char kMagic[] = "SSDP";
}

std::string serialize_params(const PolicyParams& params) {
  binary::Writer w;
  w.bytes(std::string(kMagic, 4));
  w.u32(kCheckpointVersion);
  w.u8(static_cast<std::uint8_t>(params.shape.kind));
  w.i32(params.shape.input_dim);
  w.i32(params.shape.num_actions);
  w.i32(params.shape.hidden);
  w.i32(params.shape.table_size);
  w.u64(params.weights.size());
  for (double v : params.weights) w.f64(v);
  return w.take();
}

PolicyParams deserialize_params(const std::string& bytes) {
  binary::Reader r(bytes);
  if (r.bytes(4) != std::string(kMagic, 4)) throw ParseError("not a checkpoint file", 0);
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    throw ParseError("unsupported checkpoint version " + std::to_string(version), 0);
  }
  PolicyParams p;
  const auto kind = r.u8();
  if (kind > static_cast<std::uint8_t>(ApproximatorKind::Mlp)) {
    throw ParseError("unknown approximator kind in checkpoint", 0);
  }
  p.shape.kind = static_cast<ApproximatorKind>(kind);
  p.shape.input_dim = r.i32();
  p.shape.num_actions = r.i32();
  p.shape.hidden = r.i32();
  p.shape.table_size = r.i32();
  p.shape.validate();
  const auto count = r.u64();
  if (count != p.shape.parameter_count() || r.remaining() != count * 8) {
    throw ParseError("checkpoint weight count does not match its shape", 0);
  }
  p.weights.resize(count);
  for (auto& v : p.weights) v = r.f64();
  return p;
}

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write checkpoint: " + path.string());
  const auto bytes = serialize_params(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("failed writing checkpoint: " + path.string());
}

PolicyParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_params(ss.str());
}

}  // namespace ssdlab
