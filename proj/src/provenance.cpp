#include "bermuda/provenance.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace bermuda {

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_provenance(const std::string& data_path, const nlohmann::json& config) {
    nlohmann::json side;
    side["config"] = config;
    side["config_hash"] = config_hash(config);
    side["version"] = kVersion;
    const std::string path = data_path + ".provenance.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write provenance file '" + path + "'");
    out << side.dump(2) << "\n";
}

}  // namespace bermuda
