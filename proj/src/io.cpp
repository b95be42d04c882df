#include "udgcp/io.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "json.hpp"
#include "udgcp/common.hpp"

namespace udgcp {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    std::string t = trim(s);
    if (t.empty()) return false;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && p == t.data() + t.size() && std::isfinite(out);
}

}  // namespace

std::vector<Point> read_points_csv(std::istream& in, const std::string& source) {
    std::vector<Point> pts;
    std::string line;
    int no = 0;
    bool header_ok = true;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw InputError(source + ":" + std::to_string(no) + ": " + why + ": '" + t + "'");
        };
        auto comma = t.find(',');
        if (comma == std::string::npos) fail("expected x,y");
        std::string xs = t.substr(0, comma), ys = t.substr(comma + 1);
        if (ys.find(',') != std::string::npos) fail("expected two fields");
        if (header_ok && trim(xs) == "x" && trim(ys) == "y") {
            header_ok = false;
            continue;
        }
        header_ok = false;
        Point p;
        if (!parse_double(xs, p.x)) fail("bad x coordinate");
        if (!parse_double(ys, p.y)) fail("bad y coordinate");
        pts.push_back(p);
    }
    if (in.bad()) throw InputError(source + ": read error");
    return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
    if (path == "-") return read_points_csv(std::cin, "<stdin>");
    std::ifstream f(path);
    if (!f) throw InputError(path + ": cannot open");
    return read_points_csv(f, path);
}

void write_points_csv(std::ostream& out, const std::vector<Point>& pts) {
    char buf[64];
    out << "x,y\n";
    for (const auto& p : pts) {
        auto e = std::to_chars(buf, buf + sizeof buf, p.x).ptr;
        *e++ = ',';
        e = std::to_chars(e, buf + sizeof buf, p.y).ptr;
        out.write(buf, e - buf);
        out << '\n';
    }
}

std::vector<Cycle> read_cycles_json(std::istream& in, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
    if (j.is_object()) {
        if (!j.contains("cycles")) throw InputError(source + ": no \"cycles\" member");
        j = j["cycles"];
    }
    if (!j.is_array()) throw InputError(source + ": cycles must be an array");
    std::vector<Cycle> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& c = j[i];
        if (!c.is_array()) throw InputError(source + ": cycle " + std::to_string(i) + " is not an array");
        Cycle cy;
        for (const auto& v : c) {
            if (!v.is_number_integer()) throw InputError(source + ": cycle " + std::to_string(i) + " has a non-integer entry");
            cy.push_back(v.get<int>());
        }
        out.push_back(std::move(cy));
    }
    return out;
}

int thread_count() {
    const char* s = std::getenv("UDGCP_THREADS");
    if (!s) return 1;
    int t = std::atoi(s);
    return t >= 1 ? t : 1;
}

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n && !failed;) {
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace udgcp
