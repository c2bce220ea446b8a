#include "teich/output.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "json.hpp"

#include "teich/error.hpp"

#ifndef TEICHLAB_VERSION
#define TEICHLAB_VERSION "0.0.0"
#endif

namespace teich::out {

namespace {

nlohmann::ordered_json meta_object(const Metadata& meta) {
  nlohmann::ordered_json j;
  j["tool"] = "teichlab";
  j["version"] = TEICHLAB_VERSION;
  j["schema"] = meta.schema;
  j["command"] = meta.command;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.params) p[k] = v;
  j["params"] = p;
  if (meta.seed) j["seed"] = *meta.seed;
  else j["seed"] = nullptr;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InvalidInput("table row has " + std::to_string(row.size()) + " cells, expected " +
                       std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return {buf, ptr};
}

std::string metadata_json(const Metadata& meta) { return meta_object(meta).dump(); }

std::string to_csv(const Metadata& meta, const Table& table) {
  std::string s = "# " + metadata_json(meta) + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    s += (i ? "," : "") + csv_field(table.columns[i]);
  s += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ",";
      if (const auto* d = std::get_if<double>(&row[i])) s += format_double(*d);
      else if (const auto* n = std::get_if<std::int64_t>(&row[i])) s += std::to_string(*n);
      else s += csv_field(std::get<std::string>(row[i]));
    }
    s += "\n";
  }
  return s;
}

std::string to_json(const Metadata& meta, const Table& table) {
  nlohmann::ordered_json j;
  j["meta"] = meta_object(meta);
  j["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(format_double(*d));
      } else if (const auto* n = std::get_if<std::int64_t>(&c)) {
        r.push_back(*n);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

}  // namespace teich::out
