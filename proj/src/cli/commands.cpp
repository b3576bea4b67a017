#include "mwa/cli/commands.hpp"

#include "mwa/density.hpp"
#include "mwa/montecarlo.hpp"
#include "mwa/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace mwa::cli {

using nlohmann::ordered_json;

std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json point_json(const std::optional<CurvePoint>& p)
{
    if (!p)
        return nullptr;
    return {{"t", p->t}, {"ratio", p->ratio}};
}

double rel_diff(double numeric, double closed_form)
{
    return std::abs(numeric - closed_form) / std::abs(closed_form);
}

}  // namespace

std::vector<double> sweep_grid(const SweepConfig& c)
{
    if (c.beta_e0_list.empty())
        throw UsageError("sweep: beta_e0 list is empty");
    if (!(c.t_max > 0.0) || !std::isfinite(c.t_max))
        throw UsageError("sweep: t_max must be > 0");
    if (c.points < 2)
        throw UsageError("sweep: points must be >= 2");
    for (double b : c.beta_e0_list)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw UsageError("sweep: beta_e0 values must be finite and >= 0");

    std::vector<double> t(static_cast<std::size_t>(c.points));
    if (c.log_axis) {
        if (!(c.t_min > 0.0) || !(c.t_min < c.t_max))
            throw UsageError("sweep: log axis needs 0 < t_min < t_max");
        const double step = std::log(c.t_max / c.t_min) / (c.points - 1);
        for (int i = 0; i < c.points; ++i)
            t[i] = c.t_min * std::exp(step * i);
    } else {
        for (int i = 0; i < c.points; ++i)
            t[i] = c.t_max * (i + 1) / c.points;
    }
    t.back() = c.t_max;
    return t;
}

std::string sweep(const SweepConfig& config)
{
    const std::vector<double> grid = sweep_grid(config);
    std::vector<double> betas = config.beta_e0_list;
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

    std::vector<std::string> curves(betas.size());
    parallel_for(betas.size(), config.workers, [&](std::size_t k) {
        std::string rows;
        const std::string b = format_number(betas[k]);
        for (double t : grid) {
            const double ln_ratio = model::log_detection_ratio({betas[k], t});
            rows += b + ',' + format_number(t) + ',' + format_number(std::exp(ln_ratio)) + ',' +
                    format_number(ln_ratio) + '\n';
        }
        curves[k] = std::move(rows);
    });

    std::string out = "beta_e0,t_d,ratio,ln_ratio\n";
    for (const auto& c : curves)
        out += c;
    return out;
}

std::string extrema(double beta_e0, double t_max)
{
    const ExtremaReport r = model::find_extrema(beta_e0, t_max);
    ordered_json doc;
    doc["beta_e0"] = beta_e0;
    doc["t_max"] = t_max;
    doc["monotonic"] = r.monotonic;
    doc["valley"] = point_json(r.valley);
    doc["peak"] = point_json(r.peak);
    doc["approx_valley"] = point_json(r.approx_valley);
    doc["approx_peak"] = point_json(r.approx_peak);

    ordered_json diff = ordered_json::object();
    if (r.valley && r.approx_valley) {
        diff["valley_t"] = rel_diff(r.valley->t, r.approx_valley->t);
        diff["valley_ratio"] = rel_diff(r.valley->ratio, r.approx_valley->ratio);
    }
    if (r.peak && r.approx_peak) {
        diff["peak_t"] = rel_diff(r.peak->t, r.approx_peak->t);
        diff["peak_ratio"] = rel_diff(r.peak->ratio, r.approx_peak->ratio);
    }
    doc["relative_difference"] = diff;
    return dump(doc);
}

std::string threshold()
{
    ordered_json doc;
    doc["beta_e0_critical"] = model::monotonic_threshold();
    return dump(doc);
}

std::string density(const ReducedParams& params, int points)
{
    const DensityProfile prof = density::profile(params, points);
    std::string out = "# forward_weight=" + format_number(prof.forward_weight) + "\n";
    out += "chi,rho,cdf\n";
    for (const auto& p : prof.points)
        out += format_number(p.chi) + ',' + format_number(p.rho) + ',' + format_number(p.cdf) + '\n';
    return out;
}

std::string mc(const McConfig& c)
{
    validate(c.params);
    if (c.n == 0)
        throw UsageError("mc: n must be >= 1");
    if (c.bins < 1)
        throw UsageError("mc: bins must be >= 1");

    const RngState rng{c.seed, c.stream_id};
    const auto result = montecarlo::run(rng, c.params, c.n, c.bins, c.workers);

    ordered_json doc;
    doc["seed"] = c.seed;
    doc["stream_id"] = c.stream_id;
    doc["beta_e0"] = c.params.beta_e0;
    doc["t_d"] = c.params.t_d;
    doc["n"] = result.estimate.n;
    doc["detected"] = result.estimate.detected;
    doc["ratio_hat"] = result.estimate.ratio_hat;
    doc["stderr"] = result.estimate.std_error;
    doc["analytic_ratio"] = model::detection_ratio(c.params);
    ordered_json hist = ordered_json::array();
    for (const auto& b : result.histogram)
        hist.push_back({{"chi_lo", b.chi_lo}, {"chi_hi", b.chi_hi}, {"count", b.count}});
    doc["histogram"] = hist;
    return dump(doc);
}

namespace {

std::string trim(std::string s)
{
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string::npos)
        return {};
    return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, const char* column, std::size_t line)
{
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError(std::string("invalid number in column ") + column + ": '" + text + "'", line);
    return value;
}

}  // namespace

std::vector<Measurement> read_measurements(std::istream& in)
{
    std::vector<Measurement> out;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    bool has_sigma = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto fields = split_fields(line);
        if (!have_header) {
            if (fields.size() == 2 && fields[0] == "screen_distance_m" && fields[1] == "ratio")
                has_sigma = false;
            else if (fields.size() == 3 && fields[0] == "screen_distance_m" &&
                     fields[1] == "ratio" && fields[2] == "sigma")
                has_sigma = true;
            else
                throw ParseError("expected header 'screen_distance_m,ratio[,sigma]'", line_no);
            have_header = true;
            continue;
        }
        if (fields.size() != (has_sigma ? 3u : 2u))
            throw ParseError("expected " + std::to_string(has_sigma ? 3 : 2) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        Measurement m{parse_double(fields[0], "screen_distance_m", line_no),
                      parse_double(fields[1], "ratio", line_no), std::nullopt};
        if (has_sigma && !fields[2].empty())
            m.sigma = parse_double(fields[2], "sigma", line_no);
        if (!(m.screen_distance > 0.0) || !std::isfinite(m.screen_distance))
            throw ParseError("screen_distance_m must be > 0", line_no);
        if (!(m.ratio > 0.0) || m.ratio > 1.0)
            throw ParseError("ratio must lie in (0, 1]", line_no);
        if (m.sigma && !(*m.sigma > 0.0))
            throw ParseError("sigma must be > 0", line_no);
        out.push_back(m);
    }
    if (!have_header)
        throw ParseError("missing header", line_no + 1);
    return out;
}

FitMode parse_fit_mode(const std::string& text)
{
    if (text == "L-only")
        return FitMode::LengthOnly;
    if (text == "L-and-beta")
        return FitMode::LengthAndBeta;
    throw UsageError("fit: --mode must be L-only or L-and-beta");
}

std::string fit(const std::vector<Measurement>& data, const FitConfig& c)
{
    auto need = [](const std::optional<double>& v, const char* flag) {
        if (!v)
            throw UsageError(std::string("fit: ") + flag + " is required for this mode");
        return *v;
    };
    const FitOptions options{c.workers};
    FitResult r;
    if (c.mode == FitMode::LengthOnly) {
        r = inference::fit_length(data, need(c.mass, "--mass"), need(c.wavelength, "--wavelength"),
                                  need(c.aperture_radius, "--aperture-radius"),
                                  need(c.temperature, "--temperature"), options);
    } else {
        r = inference::fit_length_and_beta(data, need(c.wavelength, "--wavelength"),
                                           need(c.aperture_radius, "--aperture-radius"), options);
    }

    ordered_json doc;
    doc["mode"] = c.mode == FitMode::LengthOnly ? "L-only" : "L-and-beta";
    doc["n_measurements"] = data.size();
    doc["length_param_m"] = r.length_param;
    doc["beta_e0"] = r.beta_e0;
    doc["beta_fitted"] = r.beta_fitted;
    doc["residual_norm"] = r.residual_norm;
    doc["iterations"] = r.iterations;
    doc["converged"] = r.converged;
    doc["warnings"] = r.warnings;
    return dump(doc);
}

std::string physical(const PhysicalSetup& s)
{
    const std::optional<std::string> warning = units::check(s);
    const ReducedParams reduced = units::to_reduced(s);
    const double energy = units::kinetic_energy(s);
    const double velocity = units::group_velocity(s);

    ordered_json doc;
    doc["kinetic_energy_j"] = energy;
    doc["kinetic_energy_ev"] = energy / units::kElectronVolt;
    doc["group_velocity_m_per_s"] = velocity;
    doc["beta_e0"] = reduced.beta_e0;
    doc["t_d"] = reduced.t_d;
    doc["decoherence_timescale_s"] = units::decoherence_timescale(s);
    doc["flight_time_s"] = s.screen_distance / velocity;
    doc["detection_ratio"] = model::detection_ratio(reduced);
    doc["warnings"] = warning ? std::vector<std::string>{*warning} : std::vector<std::string>{};
    return dump(doc);
}

}  // namespace mwa::cli
