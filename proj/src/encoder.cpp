#include "lexctx/encoder.h"

#include <cstring>
#include <fstream>

#include "lexctx/errors.h"
#include "lexctx/toy_encoder.h"

namespace lexctx {

std::unique_ptr<Encoder> load_encoder(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open encoder checkpoint " + path);
  char magic[8] = {};
  in.read(magic, 8);
  if (!in) throw IoError(path + ": truncated checkpoint");
  in.seekg(0);
  if (std::memcmp(magic, ToyEncoder::kMagic, 8) == 0) return ToyEncoder::load(in);
  throw IoError(path + ": unrecognized encoder checkpoint format");
}

}  // namespace lexctx
