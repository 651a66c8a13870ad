#include "output.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "epodetect/error.hpp"

namespace epodetect::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string counts_table(const Cohort& cohort) {
  const SampleCounts sea = cohort.counts(Altitude::SeaLevel);
  const SampleCounts alt = cohort.counts(Altitude::HighAltitude);
  std::ostringstream out;
  auto row = [&](std::string_view name, std::size_t a, std::size_t b) {
    out << std::left << std::setw(30) << name << std::right << std::setw(10) << a
        << std::setw(15) << b << "\n";
  };
  out << std::left << std::setw(30) << "Blood samples" << std::right << std::setw(10)
      << "Sea-level" << std::setw(15) << "High altitude" << "\n";
  row("Controlled samples (Placebo)", sea.control, alt.control);
  row("rhEPO samples", sea.rhepo, alt.rhepo);
  row("Total samples", sea.total(), alt.total());
  return out.str();
}

}  // namespace epodetect::cli
