#include "bwsim/svg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace bwsim {

namespace fs = std::filesystem;

namespace {

constexpr int kPanelW = 640;
constexpr int kPanelH = 140;
constexpr int kMarginL = 60;
constexpr int kMarginR = 20;
constexpr int kMarginT = 30;
constexpr int kMarginB = 30;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) { return format_double(v); }

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

void polyline(std::ostringstream& os, const std::vector<std::pair<double, double>>& pts,
              const char* color) {
    if (pts.empty()) return;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << fmt(pts[i].first) << ',' << fmt(pts[i].second);
    }
    os << "\"/>\n";
}

void axis_labels(std::ostringstream& os, double y0, double x_max, double y_max,
                 const char* x_unit) {
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    os << "<rect x=\"" << kMarginL << "\" y=\"" << fmt(y0 + kMarginT) << "\" width=\""
       << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";
    os << "<text x=\"" << kMarginL << "\" y=\"" << fmt(y0 + kMarginT - 8)
       << "\" font-size=\"10\" fill=\"#333\">0</text>\n";
    os << "<text x=\"" << fmt(kMarginL + plot_w) << "\" y=\"" << fmt(y0 + kPanelH - 10)
       << "\" font-size=\"10\" text-anchor=\"end\" fill=\"#333\">" << fmt(x_max) << ' '
       << x_unit << "</text>\n";
    os << "<text x=\"" << (kMarginL - 5) << "\" y=\"" << fmt(y0 + kMarginT + 10)
       << "\" font-size=\"10\" text-anchor=\"end\" fill=\"#333\">" << fmt(y_max)
       << "</text>\n";
}

}  // namespace

std::string render_trace_svg(const std::vector<PeriodSample>& trace) {
    std::set<int> cores;
    double t_max = 0, m_max = 1;
    for (const auto& s : trace) {
        cores.insert(s.core);
        t_max = std::max(t_max, static_cast<double>(s.t_ns));
        m_max = std::max(m_max, static_cast<double>(s.misses));
    }
    const int n = std::max<int>(1, static_cast<int>(cores.size()));
    const int height = n * kPanelH;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW << "\" height=\""
       << height << "\" viewBox=\"0 0 " << kPanelW << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    int panel = 0;
    for (int core : cores) {
        const double y0 = static_cast<double>(panel * kPanelH);
        os << "<text x=\"" << (kMarginL + 4) << "\" y=\"" << fmt(y0 + 16)
           << "\" font-size=\"12\" fill=\"#000\">core " << core << " misses/period</text>\n";
        axis_labels(os, y0, t_max / 1e6, m_max, "ms");
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : trace) {
            if (s.core != core) continue;
            const double x = kMarginL + (t_max > 0 ? s.t_ns / t_max : 0.0) * plot_w;
            const double y = y0 + kMarginT + plot_h - (s.misses / m_max) * plot_h;
            pts.emplace_back(x, y);
        }
        polyline(os, pts, kPalette[panel % 8]);
        ++panel;
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_frames_svg(const std::vector<FrameRecord>& frames) {
    if (frames.empty()) return "";
    std::map<std::string, std::vector<const FrameRecord*>> by_task;
    double t_max = 1, p_max = 1;
    for (const auto& f : frames) {
        by_task[f.task].push_back(&f);
        t_max = std::max(t_max, static_cast<double>(f.end_ns));
        p_max = std::max(p_max, static_cast<double>(f.proc_ns()));
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW << "\" height=\""
       << kPanelH << "\" viewBox=\"0 0 " << kPanelW << ' ' << kPanelH << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << (kMarginL + 4)
       << "\" y=\"16\" font-size=\"12\" fill=\"#000\">frame processing time (ms)</text>\n";
    axis_labels(os, 0, t_max / 1e6, p_max / 1e6, "ms");

    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    int series = 0;
    for (const auto& [task, recs] : by_task) {
        std::vector<std::pair<double, double>> pts;
        for (const auto* f : recs) {
            const double x = kMarginL + (f->end_ns / t_max) * plot_w;
            const double y = kMarginT + plot_h - (f->proc_ns() / p_max) * plot_h;
            pts.emplace_back(x, y);
        }
        polyline(os, pts, kPalette[series % 8]);
        os << "<text x=\"" << fmt(kPanelW - kMarginR - 4.0) << "\" y=\""
           << fmt(kMarginT + 12.0 * (series + 1)) << "\" font-size=\"10\" text-anchor=\"end\" "
           << "fill=\"" << kPalette[series % 8] << "\">" << task << "</text>\n";
        ++series;
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<PeriodSample> parse_trace_csv(const std::string& text) {
    std::vector<PeriodSample> out;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) throw std::runtime_error("trace.csv: malformed row: " + line);
        PeriodSample s;
        s.t_ns = std::stoll(f[0]);
        s.core = std::stoi(f[1]);
        s.misses = std::stoll(f[2]);
        s.frac_task = std::stod(f[3]);
        s.frac_throttled = std::stod(f[4]);
        s.frac_idle = std::stod(f[5]);
        s.frac_interrupt = std::stod(f[6]);
        out.push_back(s);
    }
    return out;
}

std::vector<FrameRecord> parse_frames_csv(const std::string& text) {
    std::vector<FrameRecord> out;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw std::runtime_error("frames.csv: malformed row: " + line);
        FrameRecord r;
        r.task = f[0];
        r.frame = std::stoll(f[1]);
        r.start_ns = std::stoll(f[2]);
        r.end_ns = std::stoll(f[3]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> plot_run_dir(const std::string& run_dir) {
    const fs::path dir(run_dir);
    auto read_file = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("missing input: " + p.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::vector<std::string> written;

    const auto trace = parse_trace_csv(read_file(dir / "trace.csv"));
    {
        std::ofstream out(dir / "trace.svg", std::ios::binary);
        out << render_trace_svg(trace);
        written.push_back((dir / "trace.svg").string());
    }

    const fs::path frames_path = dir / "frames.csv";
    if (fs::exists(frames_path)) {
        const auto frames = parse_frames_csv(read_file(frames_path));
        const std::string svg = render_frames_svg(frames);
        if (svg.empty()) {
            std::cerr << "warning: no frame records in " << frames_path.string()
                      << ", skipping frames.svg\n";
        } else {
            std::ofstream out(dir / "frames.svg", std::ios::binary);
            out << svg;
            written.push_back((dir / "frames.svg").string());
        }
    }
    return written;
}

}  // namespace bwsim
