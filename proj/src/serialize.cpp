// SPDX-License-Identifier: Apache-2.0
//
// mmsounder: directional mmWave channel sounder simulator
// Copyright (C) 2026 The mmsounder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmsounder/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mmsounder
{

namespace
{
// Strict object reader: every key must be consumed, absent keys keep their defaults.
class Fields
{
  public:
    Fields(const Json &j, std::string what) : j_(j), what_(std::move(what))
    {
        if (!j_.is_object())
            throw ConfigError(what_ + " must be a JSON object");
    }

    template <class T> void get(const char *key, T &out)
    {
        if (const Json *v = find(key))
        {
            try
            {
                out = v->get<T>();
            }
            catch (const nlohmann::json::exception &)
            {
                throw ConfigError(what_ + "." + key + " has the wrong type");
            }
        }
    }

    void get_opt(const char *key, std::optional<double> &out)
    {
        if (const Json *v = find(key))
        {
            if (v->is_null())
                out.reset();
            else if (v->is_number())
                out = v->get<double>();
            else
                throw ConfigError(what_ + "." + key + " must be a number or null");
        }
    }

    const Json *find(const char *key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    // Free-form documentation keys are accepted everywhere.
    void finish() const
    {
        for (const auto &item : j_.items())
            if (!seen_.count(item.key()) && item.key() != "description" && item.key() != "notes")
                throw ConfigError("unknown key '" + item.key() + "' in " + what_);
    }

    const std::string &what() const { return what_; }

  private:
    const Json &j_;
    std::string what_;
    std::set<std::string> seen_;
};

Json opt_json(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

std::string_view kind_name(ReflectorKind k) { return k == ReflectorKind::Specular ? "specular" : "anomalous"; }

ReflectorKind reflector_kind_from_string(const std::string &s)
{
    if (s == "specular")
        return ReflectorKind::Specular;
    if (s == "anomalous")
        return ReflectorKind::Anomalous;
    throw ConfigError("unknown reflector kind '" + s + "'");
}

std::vector<double> number_list(const Json &j, const std::string &what)
{
    if (!j.is_array())
        throw ConfigError(what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto &v : j)
    {
        if (!v.is_number())
            throw ConfigError(what + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void get_list(Fields &f, const char *key, std::vector<double> &out)
{
    if (const Json *v = f.find(key))
        out = number_list(*v, f.what() + "." + key);
}

void get_vec(Fields &f, const char *key, Vec3 &out)
{
    if (const Json *v = f.find(key))
        out = vec3_from_json(*v);
}

void get_pattern(Fields &f, const char *key, AntennaPattern &out)
{
    if (const Json *v = f.find(key))
        out = pattern_from_json(*v);
}

Json cdf_json(const std::vector<CdfPoint> &cdf)
{
    Json a = Json::array();
    for (const auto &p : cdf)
        a.push_back({p.value, p.probability});
    return a;
}

Json side_json(const HallSide &s)
{
    Json heat = Json::array();
    for (const auto &c : s.heatmap)
        heat.push_back({{"tx_az_deg", c.tx_az_deg}, {"rx_az_deg", c.rx_az_deg}, {"path_gain_db", c.path_gain_db}});
    Json cdfs = Json::array();
    for (const auto &c : s.cdfs)
        cdfs.push_back({{"tx_el_deg", c.tx_el_deg}, {"rx_el_deg", c.rx_el_deg}, {"cdf", cdf_json(c.cdf)}});
    Json mpcs = Json::array();
    for (const auto &m : s.mpcs)
        mpcs.push_back(to_json(m));
    return {{"antenna", s.antenna},
            {"steps", s.steps},
            {"measurement_time_s", s.measurement_time_s},
            {"reposition_time_s", s.reposition_time_s},
            {"heatmap", heat},
            {"cdfs", cdfs},
            {"mpcs", mpcs}};
}
} // namespace

Json to_json(const Vec3 &v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const Orientation &o) { return {{"az_deg", o.az_deg}, {"el_deg", o.el_deg}}; }

Json to_json(const AntennaPattern &p)
{
    auto finite_or_null = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return {{"boresight_gain_dbi", p.boresight_gain_dbi},
            {"beamwidth_az_deg", p.beamwidth_az_deg},
            {"beamwidth_el_deg", p.beamwidth_el_deg},
            {"sidelobe_floor_db", p.sidelobe_floor_db},
            {"steer_limit_az_deg", finite_or_null(p.steer_limit_az_deg)},
            {"steer_limit_el_deg", finite_or_null(p.steer_limit_el_deg)},
            {"scan_loss", p.scan_loss}};
}

Json to_json(const Surface &s)
{
    Json corners = Json::array();
    for (const auto &c : s.corners)
        corners.push_back(to_json(c));
    return {{"corners", corners}, {"reflection_loss_db", s.reflection_loss_db}};
}

Json to_json(const ReflectorSpec &r)
{
    return {{"center", to_json(r.center)},
            {"normal", to_json(r.normal)},
            {"width_m", r.width_m},
            {"height_m", r.height_m},
            {"kind", kind_name(r.kind)},
            {"design_incident_deg", opt_json(r.design_incident_deg)},
            {"design_reflect_deg", opt_json(r.design_reflect_deg)},
            {"peak_efficiency_db", opt_json(r.peak_efficiency_db)},
            {"angular_width_deg", r.angular_width_deg}};
}

Json to_json(const RepeaterSpec &r)
{
    return {{"position", to_json(r.position)},     {"rx_boresight", to_json(r.rx_boresight)},
            {"tx_boresight", to_json(r.tx_boresight)}, {"gain_db", r.gain_db},
            {"internal_delay_s", r.internal_delay_s}, {"enabled", r.enabled}};
}

Json to_json(const Scene &s)
{
    Json surfaces = Json::array();
    for (const auto &w : s.surfaces)
        surfaces.push_back(to_json(w));
    Json j = {{"tx", to_json(s.tx_pos)}, {"rx", to_json(s.rx_pos)}, {"surfaces", surfaces}, {"carrier_hz", s.carrier_hz}};
    if (s.reflector)
        j["reflector"] = to_json(*s.reflector);
    if (s.repeater)
        j["repeater"] = to_json(*s.repeater);
    return j;
}

Json to_json(const SounderConfig &c)
{
    return {{"carrier_hz", c.carrier_hz},
            {"sample_rate_hz", c.sample_rate_hz},
            {"zc_length", c.zc_length},
            {"zc_root", c.zc_root},
            {"oversample", c.oversample},
            {"rrc_rolloff", c.rrc_rolloff},
            {"tx_power_dbm", c.tx_power_dbm},
            {"noise_floor_dbm_per_tap", c.noise_floor_dbm_per_tap},
            {"add_noise", c.add_noise},
            {"averaging", c.averaging},
            {"adc_dynamic_range_db", c.adc_dynamic_range_db},
            {"max_path_loss_db", c.max_path_loss_db},
            {"max_delay_s", opt_json(c.max_delay_s)}};
}

Json to_json(const ExtractionConfig &c)
{
    return {{"detection_margin_db", c.detection_margin_db},
            {"delay_merge_bins", c.delay_merge_bins},
            {"angle_merge_deg", opt_json(c.angle_merge_deg)},
            {"noise_floor_dbm_per_tap", c.noise_floor_dbm_per_tap},
            {"estimate_noise_floor", c.estimate_noise_floor},
            {"refine", c.refine},
            {"explain_tolerance_db", c.explain_tolerance_db}};
}

Json to_json(const TimingModel &t)
{
    return {{"horn_step_s", t.horn_step_s},
            {"array_switch_s", t.array_switch_s},
            {"gimbal_reposition_s", t.gimbal_reposition_s}};
}

Json to_json(const Mpc &m)
{
    return {{"path_gain_db", m.path_gain_db}, {"delay_s", m.delay_s},       {"aod_az_deg", m.aod_az_deg},
            {"aod_el_deg", m.aod_el_deg},     {"aoa_az_deg", m.aoa_az_deg}, {"aoa_el_deg", m.aoa_el_deg},
            {"phase_rad", m.phase_rad},       {"tag", to_string(m.tag)}};
}

Json to_json(const MeasurementRecord &r)
{
    Json taps = Json::array();
    for (const auto &t : r.cir.taps)
        taps.push_back({t.real(), t.imag()});
    return {{"step_index", r.step_index},
            {"tx", to_json(r.cir.tx_orientation)},
            {"rx", to_json(r.cir.rx_orientation)},
            {"bin_width_s", r.cir.bin_width_s},
            {"noise_seed", r.cir.noise_realization_seed},
            {"total_rx_power_dbm", r.total_rx_power_dbm},
            {"path_gain_db", r.path_gain_db},
            {"taps", taps}};
}

Json to_json(const ScenarioConfig &c)
{
    Json j = {{"version", c.version},
              {"name", c.name},
              {"kind", to_string(c.kind)},
              {"master_seed", c.master_seed},
              {"outputs", c.outputs},
              {"scene", to_json(c.scene)},
              {"sounder", to_json(c.sounder)},
              {"extraction", to_json(c.extraction)},
              {"timing", to_json(c.timing)}};
    if (c.hall)
    {
        const auto &h = *c.hall;
        j["hall"] = {{"horn_tx_az", h.horn_tx_az},
                     {"horn_rx_az", h.horn_rx_az},
                     {"elevations", h.elevations},
                     {"tx_gimbal_az", h.tx_gimbal_az},
                     {"rx_gimbal_az", h.rx_gimbal_az},
                     {"electronic_az", h.electronic_az},
                     {"horn", to_json(h.horn)},
                     {"array_tx", to_json(h.array_tx)},
                     {"array_rx", to_json(h.array_rx)},
                     {"horn_tx_power_dbm", h.horn_tx_power_dbm},
                     {"array_tx_power_dbm", h.array_tx_power_dbm}};
    }
    if (c.arc)
    {
        const auto &a = *c.arc;
        j["arc"] = {{"arc_center", to_json(a.arc_center)},
                    {"radius_m", a.radius_m},
                    {"start_az_deg", a.start_az_deg},
                    {"step_deg", a.step_deg},
                    {"count", a.count},
                    {"first_label", a.first_label},
                    {"design_label", a.design_label},
                    {"tx_span_deg", a.tx_span_deg},
                    {"tx_step_deg", a.tx_step_deg},
                    {"rx_span_deg", a.rx_span_deg},
                    {"rx_step_deg", a.rx_step_deg},
                    {"window_bins", a.window_bins},
                    {"specular", to_json(a.specular)},
                    {"anomalous", to_json(a.anomalous)},
                    {"tx_pattern", to_json(a.tx_pattern)},
                    {"rx_pattern", to_json(a.rx_pattern)}};
    }
    if (c.repeater)
    {
        const auto &r = *c.repeater;
        Json pos = Json::array();
        for (const auto &p : r.rx_positions)
            pos.push_back(to_json(p));
        j["repeater"] = {{"rx_positions", pos},
                         {"az_start_deg", r.az_start_deg},
                         {"az_span_deg", r.az_span_deg},
                         {"az_step_deg", r.az_step_deg},
                         {"el_deg", r.el_deg},
                         {"calibration_target_db", opt_json(r.calibration_target_db)},
                         {"calibration_index", r.calibration_index},
                         {"tx_pattern", to_json(r.tx_pattern)},
                         {"rx_pattern", to_json(r.rx_pattern)}};
    }
    return j;
}

Json to_json(const ScenarioResult &r)
{
    Json j = {{"version", kScenarioVersion}, {"name", r.name}, {"kind", to_string(r.kind)}, {"master_seed", r.master_seed}};
    if (r.hall)
    {
        j["hall"] = {{"horn", side_json(r.hall->horn)},
                     {"array", side_json(r.hall->array)},
                     {"heatmap_rms_db", r.hall->heatmap_rms_db},
                     {"max_cdf_distance", r.hall->max_cdf_distance}};
    }
    Json cov = Json::array();
    for (const auto &c : r.coverage)
    {
        Json pts = Json::array();
        for (const auto &p : c.points)
        {
            Json row = {{"label", p.label}};
            if (c.variant == "repeater")
            {
                row["distance_m"] = p.distance_m;
                row["max_power_on_dbm"] = p.max_power_on_dbm;
                row["max_power_off_dbm"] = p.max_power_off_dbm;
                row["gain_db"] = p.gain_db;
            }
            else
            {
                row["reflector_power_dbm"] = p.reflector_power_dbm;
                row["total_power_dbm"] = p.total_power_dbm;
                row["strongest_delay_s"] = p.strongest_delay_s;
            }
            pts.push_back(row);
        }
        Json entry = {{"variant", c.variant}, {"points", pts}};
        if (c.variant == "repeater")
            entry["repeater_gain_db"] = c.repeater_gain_db;
        else
            entry["reflector_delay_s"] = c.reflector_delay_s;
        cov.push_back(entry);
    }
    j["coverage"] = cov;
    return j;
}

Json to_json(const RecordSet &r)
{
    Json recs = Json::array();
    for (const auto &rec : r.records)
        recs.push_back(to_json(rec));
    return {{"version", kScenarioVersion},
            {"tx_pattern", to_json(r.tx_pattern)},
            {"rx_pattern", to_json(r.rx_pattern)},
            {"tx_power_dbm", r.tx_power_dbm},
            {"extraction", to_json(r.extraction)},
            {"records", recs}};
}

Vec3 vec3_from_json(const Json &j)
{
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw ConfigError("a point or vector must be an array of three numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Orientation orientation_from_json(const Json &j)
{
    Orientation o;
    Fields f(j, "orientation");
    f.get("az_deg", o.az_deg);
    f.get("el_deg", o.el_deg);
    f.finish();
    return o;
}

AntennaPattern pattern_from_json(const Json &j)
{
    auto preset = [](const std::string &name) {
        if (name == "horn")
            return horn_antenna();
        if (name == "phased_array_tx")
            return phased_array_tx();
        if (name == "phased_array_rx")
            return phased_array_rx();
        if (name == "isotropic")
            return AntennaPattern{};
        throw ConfigError("unknown antenna preset '" + name + "'");
    };
    if (j.is_string())
        return preset(j.get<std::string>());

    Fields f(j, "antenna pattern");
    AntennaPattern p;
    if (const Json *v = f.find("preset"))
    {
        if (!v->is_string())
            throw ConfigError("antenna pattern preset must be a string");
        p = preset(v->get<std::string>());
    }
    f.get("boresight_gain_dbi", p.boresight_gain_dbi);
    f.get("beamwidth_az_deg", p.beamwidth_az_deg);
    f.get("beamwidth_el_deg", p.beamwidth_el_deg);
    f.get("sidelobe_floor_db", p.sidelobe_floor_db);
    for (auto [key, dst] : {std::pair{"steer_limit_az_deg", &p.steer_limit_az_deg},
                            std::pair{"steer_limit_el_deg", &p.steer_limit_el_deg}})
    {
        if (const Json *v = f.find(key))
        {
            if (!v->is_null())
            {
                if (!v->is_number())
                    throw ConfigError(std::string("antenna pattern.") + key + " must be a number or null");
                *dst = v->get<double>();
            }
            else
                *dst = std::numeric_limits<double>::infinity();
        }
    }
    f.get("scan_loss", p.scan_loss);
    f.finish();
    validate(p);
    return p;
}

Surface surface_from_json(const Json &j)
{
    Fields f(j, "surface");
    Surface s;
    const Json *c = f.find("corners");
    if (!c || !c->is_array() || c->size() != 4)
        throw ConfigError("surface.corners must hold four points");
    for (std::size_t i = 0; i < 4; ++i)
        s.corners[i] = vec3_from_json((*c)[i]);
    f.get("reflection_loss_db", s.reflection_loss_db);
    f.finish();
    return s;
}

ReflectorSpec reflector_from_json(const Json &j)
{
    Fields f(j, "reflector");
    ReflectorSpec r;
    get_vec(f, "center", r.center);
    get_vec(f, "normal", r.normal);
    f.get("width_m", r.width_m);
    f.get("height_m", r.height_m);
    if (const Json *k = f.find("kind"))
    {
        if (!k->is_string())
            throw ConfigError("reflector.kind must be a string");
        r.kind = reflector_kind_from_string(k->get<std::string>());
    }
    f.get_opt("design_incident_deg", r.design_incident_deg);
    f.get_opt("design_reflect_deg", r.design_reflect_deg);
    f.get_opt("peak_efficiency_db", r.peak_efficiency_db);
    f.get("angular_width_deg", r.angular_width_deg);
    f.finish();
    return r;
}

RepeaterSpec repeater_from_json(const Json &j)
{
    Fields f(j, "repeater");
    RepeaterSpec r;
    get_vec(f, "position", r.position);
    get_vec(f, "rx_boresight", r.rx_boresight);
    get_vec(f, "tx_boresight", r.tx_boresight);
    f.get("gain_db", r.gain_db);
    f.get("internal_delay_s", r.internal_delay_s);
    f.get("enabled", r.enabled);
    f.finish();
    return r;
}

Scene scene_from_json(const Json &j)
{
    Fields f(j, "scene");
    Scene s;
    get_vec(f, "tx", s.tx_pos);
    get_vec(f, "rx", s.rx_pos);
    if (const Json *w = f.find("surfaces"))
    {
        if (!w->is_array())
            throw ConfigError("scene.surfaces must be an array");
        for (const auto &e : *w)
            s.surfaces.push_back(surface_from_json(e));
    }
    if (const Json *r = f.find("reflector"); r && !r->is_null())
        s.reflector = reflector_from_json(*r);
    if (const Json *r = f.find("repeater"); r && !r->is_null())
        s.repeater = repeater_from_json(*r);
    f.get("carrier_hz", s.carrier_hz);
    f.finish();
    return s;
}

SounderConfig sounder_from_json(const Json &j)
{
    Fields f(j, "sounder");
    SounderConfig c;
    f.get("carrier_hz", c.carrier_hz);
    f.get("sample_rate_hz", c.sample_rate_hz);
    f.get("zc_length", c.zc_length);
    f.get("zc_root", c.zc_root);
    f.get("oversample", c.oversample);
    f.get("rrc_rolloff", c.rrc_rolloff);
    f.get("tx_power_dbm", c.tx_power_dbm);
    f.get("noise_floor_dbm_per_tap", c.noise_floor_dbm_per_tap);
    f.get("add_noise", c.add_noise);
    f.get("averaging", c.averaging);
    f.get("adc_dynamic_range_db", c.adc_dynamic_range_db);
    f.get("max_path_loss_db", c.max_path_loss_db);
    f.get_opt("max_delay_s", c.max_delay_s);
    f.finish();
    validate(c);
    return c;
}

ExtractionConfig extraction_from_json(const Json &j)
{
    Fields f(j, "extraction");
    ExtractionConfig c;
    f.get("detection_margin_db", c.detection_margin_db);
    f.get("delay_merge_bins", c.delay_merge_bins);
    f.get_opt("angle_merge_deg", c.angle_merge_deg);
    f.get("noise_floor_dbm_per_tap", c.noise_floor_dbm_per_tap);
    f.get("estimate_noise_floor", c.estimate_noise_floor);
    f.get("refine", c.refine);
    f.get("explain_tolerance_db", c.explain_tolerance_db);
    f.finish();
    validate(c);
    return c;
}

TimingModel timing_from_json(const Json &j)
{
    Fields f(j, "timing");
    TimingModel t;
    f.get("horn_step_s", t.horn_step_s);
    f.get("array_switch_s", t.array_switch_s);
    f.get("gimbal_reposition_s", t.gimbal_reposition_s);
    f.finish();
    validate(t);
    return t;
}

Mpc mpc_from_json(const Json &j)
{
    Fields f(j, "mpc");
    Mpc m;
    f.get("path_gain_db", m.path_gain_db);
    f.get("delay_s", m.delay_s);
    f.get("aod_az_deg", m.aod_az_deg);
    f.get("aod_el_deg", m.aod_el_deg);
    f.get("aoa_az_deg", m.aoa_az_deg);
    f.get("aoa_el_deg", m.aoa_el_deg);
    f.get("phase_rad", m.phase_rad);
    if (const Json *t = f.find("tag"))
    {
        if (!t->is_string())
            throw ConfigError("mpc.tag must be a string");
        m.tag = path_tag_from_string(t->get<std::string>());
    }
    f.finish();
    return m;
}

MeasurementRecord record_from_json(const Json &j)
{
    Fields f(j, "record");
    MeasurementRecord r;
    f.get("step_index", r.step_index);
    if (const Json *v = f.find("tx"))
        r.cir.tx_orientation = orientation_from_json(*v);
    if (const Json *v = f.find("rx"))
        r.cir.rx_orientation = orientation_from_json(*v);
    f.get("bin_width_s", r.cir.bin_width_s);
    f.get("noise_seed", r.cir.noise_realization_seed);
    if (const Json *t = f.find("taps"))
    {
        if (!t->is_array())
            throw ConfigError("record.taps must be an array of [re, im] pairs");
        for (const auto &p : *t)
        {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError("record.taps must be an array of [re, im] pairs");
            r.cir.taps.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    if (!(r.cir.bin_width_s > 0.0))
        throw ConfigError("record.bin_width_s must be positive");
    // Stored totals are informative only; they are recomputed from the taps.
    f.find("total_rx_power_dbm");
    f.get("path_gain_db", r.path_gain_db);
    f.finish();
    r.total_rx_power_dbm = total_power_dbm(r.cir);
    return r;
}

ScenarioConfig scenario_from_json(const Json &j)
{
    Fields f(j, "scenario");
    ScenarioConfig c;
    f.get("version", c.version);
    if (c.version != kScenarioVersion)
        throw ConfigError("unsupported scenario version " + std::to_string(c.version));
    f.get("name", c.name);
    if (const Json *k = f.find("kind"))
    {
        if (!k->is_string())
            throw ConfigError("scenario.kind must be a string");
        c.kind = scenario_kind_from_string(k->get<std::string>());
    }
    else
        throw ConfigError("scenario.kind is required");
    f.get("master_seed", c.master_seed);
    f.get("outputs", c.outputs);
    if (const Json *v = f.find("scene"))
        c.scene = scene_from_json(*v);
    else
        throw ConfigError("scenario.scene is required");
    if (const Json *v = f.find("sounder"))
        c.sounder = sounder_from_json(*v);
    if (const Json *v = f.find("extraction"))
        c.extraction = extraction_from_json(*v);
    if (const Json *v = f.find("timing"))
        c.timing = timing_from_json(*v);

    if (const Json *v = f.find("hall"))
    {
        Fields h(*v, "hall");
        HallSettings s;
        get_list(h, "horn_tx_az", s.horn_tx_az);
        get_list(h, "horn_rx_az", s.horn_rx_az);
        get_list(h, "elevations", s.elevations);
        get_list(h, "tx_gimbal_az", s.tx_gimbal_az);
        get_list(h, "rx_gimbal_az", s.rx_gimbal_az);
        get_list(h, "electronic_az", s.electronic_az);
        get_pattern(h, "horn", s.horn);
        get_pattern(h, "array_tx", s.array_tx);
        get_pattern(h, "array_rx", s.array_rx);
        h.get("horn_tx_power_dbm", s.horn_tx_power_dbm);
        h.get("array_tx_power_dbm", s.array_tx_power_dbm);
        h.finish();
        c.hall = s;
    }
    if (const Json *v = f.find("arc"))
    {
        Fields a(*v, "arc");
        ArcSettings s;
        get_vec(a, "arc_center", s.arc_center);
        a.get("radius_m", s.radius_m);
        a.get("start_az_deg", s.start_az_deg);
        a.get("step_deg", s.step_deg);
        a.get("count", s.count);
        a.get("first_label", s.first_label);
        a.get("design_label", s.design_label);
        a.get("tx_span_deg", s.tx_span_deg);
        a.get("tx_step_deg", s.tx_step_deg);
        a.get("rx_span_deg", s.rx_span_deg);
        a.get("rx_step_deg", s.rx_step_deg);
        a.get("window_bins", s.window_bins);
        if (const Json *r = a.find("specular"))
            s.specular = reflector_from_json(*r);
        if (const Json *r = a.find("anomalous"))
            s.anomalous = reflector_from_json(*r);
        get_pattern(a, "tx_pattern", s.tx_pattern);
        get_pattern(a, "rx_pattern", s.rx_pattern);
        a.finish();
        c.arc = s;
    }
    if (const Json *v = f.find("repeater"))
    {
        Fields r(*v, "repeater settings");
        RepeaterSettings s;
        if (const Json *p = r.find("rx_positions"))
        {
            if (!p->is_array())
                throw ConfigError("repeater.rx_positions must be an array of points");
            for (const auto &e : *p)
                s.rx_positions.push_back(vec3_from_json(e));
        }
        r.get("az_start_deg", s.az_start_deg);
        r.get("az_span_deg", s.az_span_deg);
        r.get("az_step_deg", s.az_step_deg);
        r.get("el_deg", s.el_deg);
        r.get_opt("calibration_target_db", s.calibration_target_db);
        r.get("calibration_index", s.calibration_index);
        get_pattern(r, "tx_pattern", s.tx_pattern);
        get_pattern(r, "rx_pattern", s.rx_pattern);
        r.finish();
        c.repeater = s;
    }
    f.finish();
    validate(c);
    return c;
}

RecordSet record_set_from_json(const Json &j)
{
    Fields f(j, "record set");
    int version = kScenarioVersion;
    f.get("version", version);
    if (version != kScenarioVersion)
        throw ConfigError("unsupported record set version " + std::to_string(version));
    RecordSet r;
    get_pattern(f, "tx_pattern", r.tx_pattern);
    get_pattern(f, "rx_pattern", r.rx_pattern);
    f.get("tx_power_dbm", r.tx_power_dbm);
    if (const Json *v = f.find("extraction"))
        r.extraction = extraction_from_json(*v);
    if (const Json *v = f.find("records"))
    {
        if (!v->is_array())
            throw ConfigError("record set.records must be an array");
        for (const auto &e : *v)
            r.records.push_back(record_from_json(e));
    }
    f.finish();
    return r;
}

Json read_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    try
    {
        return Json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

ScenarioConfig load_scenario(const std::filesystem::path &path) { return scenario_from_json(read_json_file(path)); }

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace mmsounder
