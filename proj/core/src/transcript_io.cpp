#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iecc/transcript.hpp"

namespace iecc {

namespace {

using nlohmann::json;

json params_to_json(const ProtocolParams& pr) {
  return json{{"q", pr.q},          {"N", pr.n_outer},     {"alpha", pr.alpha},
              {"m", pr.m},          {"kIn", pr.k_in},      {"nIn", pr.n_in},
              {"p", pr.p},          {"blockLen", pr.block_len},
              {"T", pr.chunk_count},{"totalBits", pr.total_bits}};
}

}  // namespace

std::string transcript_to_jsonl(const Transcript& t) {
  std::ostringstream out;
  json header{{"type", "header"},
              {"n", t.params.n},
              {"epsilon", t.params.eps.to_string()},
              {"seed", t.seed},
              {"strategy", t.strategy_name},
              {"budgetFraction", t.budget_fraction.to_string()},
              {"x", t.x.to_hex()},
              {"params", params_to_json(t.params)}};
  out << header.dump() << '\n';
  for (const auto& c : t.chunks) {
    json rec{{"type", "chunk"},
             {"idx", c.chunk_idx},
             {"j", c.j},
             {"aliceSent", c.alice_clean.to_hex()},
             {"aliceMask", c.alice_mask.to_hex()},
             {"bobSent", c.bob_clean.to_hex()},
             {"bobMask", c.bob_mask.to_hex()},
             {"bobCase", c.bob_case}};
    out << rec.dump() << '\n';
  }
  json trailer{{"type", "trailer"},
               {"output", t.output.to_hex()},
               {"erasedAlice", t.erased_alice},
               {"erasedBob", t.erased_bob},
               {"clamped", t.budget_clamped},
               {"success", t.success}};
  out << trailer.dump() << '\n';
  return out.str();
}

void write_transcript(const Transcript& t, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open transcript file for writing: " + path);
  f << transcript_to_jsonl(t);
}

Transcript transcript_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Transcript t;
  bool have_header = false, have_trailer = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    std::string type = rec.at("type").get<std::string>();
    if (type == "header") {
      std::int64_t n = rec.at("n").get<std::int64_t>();
      Frac eps = Frac::parse(rec.at("epsilon").get<std::string>());
      t.params = derive_params(n, eps);
      const json& pj = rec.at("params");
      if (pj.at("p").get<std::int64_t>() != t.params.p ||
          pj.at("T").get<std::int64_t>() != t.params.chunk_count ||
          pj.at("totalBits").get<std::int64_t>() != t.params.total_bits)
        throw std::runtime_error("transcript header parameters do not match derivation");
      t.seed = rec.at("seed").get<std::uint64_t>();
      t.strategy_name = rec.at("strategy").get<std::string>();
      t.budget_fraction = Frac::parse(rec.at("budgetFraction").get<std::string>());
      t.x = BitVector::from_hex(rec.at("x").get<std::string>(), n);
      have_header = true;
    } else if (type == "chunk") {
      if (!have_header) throw std::runtime_error("chunk record before header");
      ChunkRecord c;
      c.chunk_idx = rec.at("idx").get<std::int64_t>();
      c.j = rec.at("j").get<std::int64_t>();
      c.alice_clean = BitVector::from_hex(rec.at("aliceSent").get<std::string>(), t.params.p);
      c.alice_mask = BitVector::from_hex(rec.at("aliceMask").get<std::string>(), t.params.p);
      c.bob_clean = BitVector::from_hex(rec.at("bobSent").get<std::string>(), t.params.bob_len);
      c.bob_mask = BitVector::from_hex(rec.at("bobMask").get<std::string>(), t.params.bob_len);
      c.bob_case = rec.at("bobCase").get<int>();
      t.chunks.push_back(std::move(c));
    } else if (type == "trailer") {
      if (!have_header) throw std::runtime_error("trailer record before header");
      t.output = BitVector::from_hex(rec.at("output").get<std::string>(), t.params.n);
      t.erased_alice = rec.at("erasedAlice").get<std::int64_t>();
      t.erased_bob = rec.at("erasedBob").get<std::int64_t>();
      t.budget_clamped = rec.at("clamped").get<bool>();
      t.success = rec.at("success").get<bool>();
      have_trailer = true;
    } else {
      throw std::runtime_error("unknown transcript record type: " + type);
    }
  }
  if (!have_header || !have_trailer) throw std::runtime_error("truncated transcript");
  return t;
}

Transcript read_transcript(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open transcript file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return transcript_from_jsonl(ss.str());
}

}  // namespace iecc
