#include "uavsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uavsim/error.hpp"

namespace uavsim {

std::string format_db(double v) {
    if (!(v == v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_map_csv(const CoverageMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidParameterError("cannot open for writing: " + path);
    out << "x_m,y_m,z_m";
    for (const auto& id : map.tx_ids) out << ",rx_" << id << "_dbm";
    for (const auto& b : map.bands) out << ",sinr_" << b.id << "_db";
    for (const auto& b : map.bands) out << ",serving_" << b.id;
    out << ",in_building\n";
    for (int iy = 0; iy < map.ny; ++iy) {
        for (int ix = 0; ix < map.nx; ++ix) {
            const auto& c = map.at(ix, iy);
            Vec3 p = map.point(ix, iy);
            out << format_db(p.x) << ',' << format_db(p.y) << ','
                << format_db(p.z);
            for (double v : c.rx_dbm) out << ',' << format_db(v);
            for (double v : c.sinr_db) out << ',' << format_db(v);
            for (int s : c.serving)
                out << ',' << (s >= 0 ? map.tx_ids[s] : "");
            out << ',' << (c.in_building ? 1 : 0) << '\n';
        }
    }
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}
}  // namespace

CoverageMap read_map_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open map csv: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw InvalidParameterError("empty map csv: " + path);
    auto header = split_csv(line);

    CoverageMap map;
    std::size_t i = 3;
    auto starts = [](const std::string& s, const std::string& p) {
        return s.rfind(p, 0) == 0;
    };
    for (; i < header.size() && starts(header[i], "rx_"); ++i) {
        std::string id = header[i].substr(3);
        id = id.substr(0, id.size() - 4);  // strip _dbm
        map.tx_ids.push_back(id);
    }
    for (; i < header.size() && starts(header[i], "sinr_"); ++i) {
        std::string id = header[i].substr(5);
        Band b;
        b.id = id.substr(0, id.size() - 3);  // strip _db
        map.bands.push_back(b);
    }

    struct Row {
        double x, y, z;
        CoverageCell cell;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        Row r;
        r.x = std::stod(f[0]);
        r.y = std::stod(f[1]);
        r.z = std::stod(f[2]);
        std::size_t k = 3;
        auto num = [&](const std::string& s) {
            if (s.empty()) return kNoValue;
            if (s == "-inf") return kNegInf;
            return std::stod(s);
        };
        for (std::size_t t = 0; t < map.tx_ids.size(); ++t)
            r.cell.rx_dbm.push_back(num(f[k++]));
        for (std::size_t b = 0; b < map.bands.size(); ++b)
            r.cell.sinr_db.push_back(num(f[k++]));
        for (std::size_t b = 0; b < map.bands.size(); ++b) {
            const std::string& s = f[k++];
            int idx = -1;
            for (std::size_t t = 0; t < map.tx_ids.size(); ++t)
                if (map.tx_ids[t] == s) idx = static_cast<int>(t);
            r.cell.serving.push_back(idx);
        }
        r.cell.in_building = k < f.size() && f[k] == "1";
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw InvalidParameterError("map csv has no rows: " + path);

    map.x0 = rows.front().x;
    map.y0 = rows.front().y;
    map.altitude = rows.front().z;
    int nx = 1;
    while (nx < static_cast<int>(rows.size()) && rows[nx].y == map.y0) ++nx;
    map.nx = nx;
    map.ny = static_cast<int>(rows.size()) / nx;
    map.resolution = map.nx > 1 ? rows[1].x - rows[0].x
                                : (map.ny > 1 ? rows[nx].y - rows[0].y : 1.0);
    for (auto& r : rows) map.cells.push_back(std::move(r.cell));
    return map;
}

void write_map_pgm(const CoverageMap& map, const std::string& band_id,
                   const std::string& path, double min_db, double max_db) {
    int b = map.band_index(band_id);
    if (b < 0) throw InvalidParameterError("write_map_pgm: unknown band");
    if (!(max_db > min_db))
        throw InvalidParameterError("write_map_pgm: empty dB range");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameterError("cannot open for writing: " + path);
    out << "P2\n# sinr_" << band_id << "_db scaled over [" << format_db(min_db)
        << ", " << format_db(max_db) << "] dB; 0=gap\n"
        << map.nx << ' ' << map.ny << "\n255\n";
    // Top row of the image is the max-y row.
    for (int iy = map.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < map.nx; ++ix) {
            const auto& c = map.at(ix, iy);
            int v = 0;
            if (c.in_building) {
                v = 96;
            } else {
                double s = c.sinr_db[b];
                if (s == s) {
                    double f = (s - min_db) / (max_db - min_db);
                    f = std::min(1.0, std::max(0.0, f));
                    v = 32 + static_cast<int>(f * 223.0);
                }
            }
            out << v << (ix + 1 < map.nx ? ' ' : '\n');
        }
    }
}

void write_power_table_csv(
    const std::vector<std::pair<double, double>>& table,
    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidParameterError("cannot open for writing: " + path);
    out << "sinr_db,tx_power_dbm\n";
    for (const auto& [sinr, dbm] : table)
        out << format_db(sinr) << ',' << format_db(dbm) << '\n';
}

void write_cdf_csv(const SinrCdf& cdf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidParameterError("cannot open for writing: " + path);
    out << "sinr_db,cumulative_fraction\n";
    out << "gap," << format_db(cdf.gap_fraction()) << '\n';
    std::size_t n = cdf.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = cdf.samples[i];
        if (std::isinf(s)) continue;  // gap mass already reported
        out << format_db(s) << ','
            << format_db(static_cast<double>(i + 1) / n) << '\n';
    }
}

}  // namespace uavsim
