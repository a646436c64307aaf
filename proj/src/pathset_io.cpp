#include "bermuda/pathset_io.hpp"

#include <fstream>
#include <stdexcept>

#include "bermuda/io_util.hpp"
#include "bermuda/provenance.hpp"

namespace bermuda {

void dump_pathset(const PathSet& paths, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write path file '" + csv_path + "'");
    out << "path";
    for (double t : paths.times) out << ",x_" << fmt_double(t);
    for (double t : paths.times) out << ",df_" << fmt_double(t);
    out << "\n";
    const std::size_t nt = paths.n_times();
    for (std::size_t p = 0; p < paths.n_paths; ++p) {
        out << p;
        for (std::size_t i = 0; i < nt; ++i) out << "," << fmt_double(paths.state(p, i));
        for (std::size_t i = 0; i < nt; ++i) out << "," << fmt_double(paths.df(p, i));
        out << "\n";
    }

    nlohmann::json meta;
    meta["seed"] = paths.seed;
    meta["a"] = paths.params.a;
    meta["sigma"] = paths.params.sigma;
    meta["times"] = paths.times;
    meta["n_paths"] = paths.n_paths;
    meta["antithetic"] = paths.antithetic;
    write_provenance(csv_path, meta);
}

}  // namespace bermuda
