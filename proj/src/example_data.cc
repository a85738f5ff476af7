// Copyright 2026 The medsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medsql/example_data.h"

#include <cstdio>
#include <functional>
#include <vector>

#include "medsql/csv.h"
#include "medsql/file_util.h"
#include "medsql/random.h"

namespace medsql {
namespace {

using Strings = std::vector<std::string>;

const Strings kFirstNames = {"John", "Mary", "Jerry", "Linda", "Paul",
                             "Kelly", "Omar", "Rita", "Hugo", "Nina"};
const Strings kLastNames = {"Doe", "Deaton", "Kramer", "Lopez", "Stone",
                            "Weber", "Nakamura", "Okafor"};
const Strings kMarital = {"MARRIED", "SINGLE", "WIDOWED", "DIVORCED"};
const Strings kGender = {"M", "F"};
const Strings kLanguage = {"ENGL", "PORT", "HAIT", "SPAN", "RUSS", "CANT"};
const Strings kReligion = {"CATHOLIC", "PROTESTANT QUAKER", "JEWISH",
                           "NOT SPECIFIED", "UNOBTAINABLE"};
const Strings kAdmissionType = {"EMERGENCY", "ELECTIVE", "URGENT", "NEWBORN"};
const Strings kInsurance = {"Medicare", "Private", "Medicaid", "Government",
                            "Self Pay"};
const Strings kEthnicity = {"WHITE", "BLACK/AFRICAN AMERICAN",
                            "HISPANIC OR LATINO", "ASIAN", "UNKNOWN/NOT SPECIFIED"};
const Strings kAdmissionLocation = {"EMERGENCY ROOM ADMIT",
                                    "PHYS REFERRAL/NORMAL DELI",
                                    "TRANSFER FROM HOSP/EXTRAM",
                                    "CLINIC REFERRAL/PREMATURE"};
const Strings kDischargeLocation = {"HOME", "HOME HEALTH CARE", "SNF",
                                    "DEAD/EXPIRED", "REHAB/DISTINCT PART HOSP"};
const Strings kPrimaryDiagnosis = {"PNEUMONIA", "SEPSIS", "CONGESTIVE HEART FAILURE",
                                   "CORONARY ARTERY DISEASE", "GASTROINTESTINAL BLEED",
                                   "STROKE"};
const std::vector<std::pair<std::string, std::string>> kDiagnoses = {
    {"4280", "CHF NOS"}, {"42731", "Atrial fibrillation"},
    {"5849", "Acute kidney failure NOS"}, {"25000", "DMII wo cmp nt st uncntr"},
    {"4019", "Hypertension NOS"}, {"51881", "Acute respiratry failure"},
    {"2724", "Hyperlipidemia NEC/NOS"}, {"V5861", "Long-term use anticoagul"}};
const std::vector<std::pair<std::string, std::string>> kProcedures = {
    {"3893", "Venous cath NEC"}, {"9604", "Insert endotracheal tube"},
    {"9671", "Cont inv mec ven <96 hrs"}, {"3961", "Extracorporeal circulat"},
    {"8856", "Coronar arteriogr-2 cath"}, {"9904", "Packed cell transfusion"}};
const Strings kDrugType = {"MAIN", "BASE", "ADDITIVE"};
const Strings kDrugs = {"Heparin", "Insulin", "Metoprolol", "Furosemide",
                        "Potassium Chloride", "Acetaminophen", "Vancomycin"};
const Strings kRoute = {"IV", "PO", "SC", "IV DRIP", "NG"};
const Strings kDose = {"5000", "10", "25", "40", "500", "1000"};
const Strings kLabFlag = {"abnormal", "delta", ""};
const Strings kLabUnit = {"mg/dL", "mEq/L", "%", "K/uL", "IU/L"};
const std::vector<std::pair<std::string, std::string>> kLabTests = {
    {"50912", "Creatinine"}, {"50971", "Potassium"}, {"51222", "Hemoglobin"},
    {"50931", "Glucose"}, {"51301", "White Blood Cells"}, {"50861", "Alanine Aminotransferase (ALT)"}};
const Strings kFluid = {"Blood", "Urine", "Ascites"};
const Strings kCategory = {"Chemistry", "Hematology", "Blood Gas"};

std::string Num(std::uint64_t v) { return std::to_string(v); }

std::string Date(Rng& rng, int year_lo, int year_hi) {
  const int year = year_lo + static_cast<int>(UniformBelow(rng, year_hi - year_lo + 1));
  const int month = 1 + static_cast<int>(UniformBelow(rng, 12));
  const int day = 1 + static_cast<int>(UniformBelow(rng, 28));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:00", year, month, day,
                static_cast<int>(UniformBelow(rng, 24)),
                static_cast<int>(UniformBelow(rng, 60)));
  return buf;
}

TableDef Table(std::string name,
               std::vector<std::pair<std::string, ColumnAttr>> columns) {
  TableDef t{std::move(name), {}};
  for (auto& [c, a] : columns) t.columns.push_back({std::move(c), a});
  return t;
}

}  // namespace

SchemaDef ExampleSchema() {
  constexpr auto kT = ColumnAttr::kText;
  constexpr auto kN = ColumnAttr::kNumber;
  constexpr auto kD = ColumnAttr::kDatetime;
  SchemaDef s;
  s.tables.push_back(Table(
      "DEMOGRAPHIC",
      {{"SUBJECT_ID", kT}, {"HADM_ID", kT}, {"NAME", kT}, {"MARITAL_STATUS", kT},
       {"AGE", kN}, {"DOB", kD}, {"GENDER", kT}, {"LANGUAGE", kT}, {"RELIGION", kT},
       {"ADMISSION_TYPE", kT}, {"DAYS_STAY", kN}, {"INSURANCE", kT},
       {"ETHNICITY", kT}, {"EXPIRE_FLAG", kN}, {"ADMISSION_LOCATION", kT},
       {"DISCHARGE_LOCATION", kT}, {"DIAGNOSIS", kT}, {"DOD", kD},
       {"DOB_YEAR", kN}, {"DOD_YEAR", kN}, {"ADMITTIME", kD}, {"DISCHTIME", kD},
       {"ADMITYEAR", kN}}));
  s.tables.push_back(Table("DIAGNOSES", {{"SUBJECT_ID", kT}, {"HADM_ID", kT},
                                         {"ICD9_CODE", kT}, {"SHORT_TITLE", kT},
                                         {"LONG_TITLE", kT}}));
  s.tables.push_back(Table("PROCEDURES", {{"SUBJECT_ID", kT}, {"HADM_ID", kT},
                                          {"ICD9_CODE", kT}, {"SHORT_TITLE", kT},
                                          {"LONG_TITLE", kT}}));
  s.tables.push_back(Table(
      "PRESCRIPTIONS", {{"SUBJECT_ID", kT}, {"HADM_ID", kT}, {"DRUG_TYPE", kT},
                        {"DRUG", kT}, {"FORMULARY_DRUG_CD", kT}, {"ROUTE", kT},
                        {"DRUG_DOSE", kT}}));
  s.tables.push_back(Table(
      "LAB", {{"SUBJECT_ID", kT}, {"HADM_ID", kT}, {"ITEMID", kT},
              {"CHARTTIME", kD}, {"FLAG", kT}, {"VALUE_UNIT", kT}, {"LABEL", kT},
              {"FLUID", kT}, {"CATEGORY", kT}}));
  return s;
}

std::map<std::string, std::filesystem::path> WriteExampleTables(
    const std::filesystem::path& dir, std::size_t rows, std::uint64_t seed) {
  const SchemaDef schema = ExampleSchema();
  Rng rng(seed);
  auto subject = [](std::size_t i) { return Num(10000 + i); };
  auto hadm = [](std::size_t i) { return Num(100000 + 7 * i); };
  // Related tables draw subjects from the DEMOGRAPHIC rows.
  auto any_patient = [&]() -> std::size_t {
    return rows == 0 ? 0 : UniformBelow(rng, rows);
  };

  std::map<std::string, std::function<CsvRow(std::size_t)>> makers;
  makers["DEMOGRAPHIC"] = [&](std::size_t i) {
    const int dob_year = 2040 + static_cast<int>(UniformBelow(rng, 120));
    const bool expired = UniformBelow(rng, 3) == 0;
    const int admit_year = dob_year + 18 + static_cast<int>(UniformBelow(rng, 60));
    const std::string dod = expired ? Date(rng, admit_year, admit_year + 2) : "";
    const std::string admit = Date(rng, admit_year, admit_year);
    return CsvRow{subject(i), hadm(i),
                  Pick(rng, kFirstNames) + " " + Pick(rng, kLastNames),
                  Pick(rng, kMarital), Num(admit_year - dob_year),
                  Date(rng, dob_year, dob_year), Pick(rng, kGender),
                  Pick(rng, kLanguage), Pick(rng, kReligion),
                  Pick(rng, kAdmissionType), Num(1 + UniformBelow(rng, 40)),
                  Pick(rng, kInsurance), Pick(rng, kEthnicity),
                  expired ? "1" : "0", Pick(rng, kAdmissionLocation),
                  Pick(rng, kDischargeLocation), Pick(rng, kPrimaryDiagnosis), dod,
                  Num(dob_year), expired ? dod.substr(0, 4) : "", admit,
                  Date(rng, admit_year + 1, admit_year + 1), Num(admit_year)};
  };
  auto coded = [&](const std::vector<std::pair<std::string, std::string>>& codes) {
    return [&, codes](std::size_t) {
      const std::size_t p = any_patient();
      const auto& [code, title] = Pick(rng, codes);
      return CsvRow{subject(p), hadm(p), code, title, title + " (long title)"};
    };
  };
  makers["DIAGNOSES"] = coded(kDiagnoses);
  makers["PROCEDURES"] = coded(kProcedures);
  makers["PRESCRIPTIONS"] = [&](std::size_t) {
    const std::size_t p = any_patient();
    const std::string drug = Pick(rng, kDrugs);
    return CsvRow{subject(p), hadm(p), Pick(rng, kDrugType), drug,
                  drug.substr(0, 4) + "1", Pick(rng, kRoute), Pick(rng, kDose)};
  };
  makers["LAB"] = [&](std::size_t) {
    const std::size_t p = any_patient();
    const auto& [item, label] = Pick(rng, kLabTests);
    return CsvRow{subject(p), hadm(p), item, Date(rng, 2100, 2150),
                  Pick(rng, kLabFlag), Pick(rng, kLabUnit), label,
                  Pick(rng, kFluid), Pick(rng, kCategory)};
  };

  std::map<std::string, std::filesystem::path> files;
  for (const TableDef& table : schema.tables) {
    CsvRow header;
    for (const ColumnDef& c : table.columns) header.push_back(c.name);
    std::string text = FormatCsvRow(header);
    for (std::size_t i = 0; i < rows; ++i) text += FormatCsvRow(makers[table.name](i));
    const auto path = dir / (table.name + ".csv");
    WriteFileAtomic(path, text);
    files[table.name] = path;
  }
  return files;
}

std::vector<QuestionTemplate> ExampleTemplates() {
  const std::string count_subjects = "SELECT COUNT ( DISTINCT DEMOGRAPHIC.\"SUBJECT_ID\" ) ";
  auto join = [](const std::string& a, const std::string& b) {
    return " INNER JOIN " + b + " ON " + a + ".HADM_ID = " + b + ".HADM_ID";
  };
  std::vector<QuestionTemplate> t = {
      {"demo-lang-gender",
       "how many [GENDER] patients have language [LANG]?",
       count_subjects + "FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.\"LANGUAGE\" = \"[LANG]\" "
                        "AND DEMOGRAPHIC.\"GENDER\" = \"[GENDER]\"",
       {{"GENDER", {"DEMOGRAPHIC", "GENDER"}}, {"LANG", {"DEMOGRAPHIC", "LANGUAGE"}}}},
      {"demo-religion-marital",
       "count the [MARITAL] patients whose religion is [RELIGION]",
       count_subjects + "FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.\"MARITAL_STATUS\" = \"[MARITAL]\" "
                        "AND DEMOGRAPHIC.\"RELIGION\" = \"[RELIGION]\"",
       {{"MARITAL", {"DEMOGRAPHIC", "MARITAL_STATUS"}},
        {"RELIGION", {"DEMOGRAPHIC", "RELIGION"}}}},
      {"demo-admission-insurance",
       "what is the average days of stay of [ADM] admissions covered by [INS]?",
       "SELECT AVG ( DEMOGRAPHIC.\"DAYS_STAY\" ) FROM DEMOGRAPHIC WHERE "
       "DEMOGRAPHIC.\"ADMISSION_TYPE\" = \"[ADM]\" AND DEMOGRAPHIC.\"INSURANCE\" = \"[INS]\"",
       {{"ADM", {"DEMOGRAPHIC", "ADMISSION_TYPE"}}, {"INS", {"DEMOGRAPHIC", "INSURANCE"}}}},
      {"demo-ethnicity-diagnosis",
       "get the minimum age of [ETH] patients with primary disease [DIAG]",
       "SELECT MIN ( DEMOGRAPHIC.\"AGE\" ) FROM DEMOGRAPHIC WHERE "
       "DEMOGRAPHIC.\"ETHNICITY\" = \"[ETH]\" AND DEMOGRAPHIC.\"DIAGNOSIS\" = \"[DIAG]\"",
       {{"DIAG", {"DEMOGRAPHIC", "DIAGNOSIS"}}, {"ETH", {"DEMOGRAPHIC", "ETHNICITY"}}}},
      {"demo-age",
       "how many patients are aged below [AGE]?",
       count_subjects + "FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.\"AGE\" < \"[AGE]\"",
       {{"AGE", {"DEMOGRAPHIC", "AGE"}}}},
      {"demo-name",
       "what is the admission location and insurance of [NAME]?",
       "SELECT DEMOGRAPHIC.\"ADMISSION_LOCATION\" , DEMOGRAPHIC.\"INSURANCE\" FROM DEMOGRAPHIC "
       "WHERE DEMOGRAPHIC.\"NAME\" = \"[NAME]\"",
       {{"NAME", {"DEMOGRAPHIC", "NAME"}}}},
      {"demo-subject",
       "what is the marital status and language of patient id [SUBJ]?",
       "SELECT DEMOGRAPHIC.\"MARITAL_STATUS\" , DEMOGRAPHIC.\"LANGUAGE\" FROM DEMOGRAPHIC "
       "WHERE DEMOGRAPHIC.\"SUBJECT_ID\" = \"[SUBJ]\"",
       {{"SUBJ", {"DEMOGRAPHIC", "SUBJECT_ID"}}}},
      {"demo-join-procedure",
       "how many patients with language [LANG] underwent the procedure [PROC]?",
       count_subjects + "FROM DEMOGRAPHIC" + join("DEMOGRAPHIC", "PROCEDURES") +
           " WHERE DEMOGRAPHIC.\"LANGUAGE\" = \"[LANG]\" AND PROCEDURES.\"SHORT_TITLE\" = \"[PROC]\"",
       {{"LANG", {"DEMOGRAPHIC", "LANGUAGE"}}, {"PROC", {"PROCEDURES", "SHORT_TITLE"}}}},
      {"demo-join-drug",
       "count the [GENDER] patients given [DRUG] by [ROUTE] route",
       count_subjects + "FROM DEMOGRAPHIC" + join("DEMOGRAPHIC", "PRESCRIPTIONS") +
           " WHERE DEMOGRAPHIC.\"GENDER\" = \"[GENDER]\" AND PRESCRIPTIONS.\"DRUG\" = \"[DRUG]\" "
           "AND PRESCRIPTIONS.\"ROUTE\" = \"[ROUTE]\"",
       {{"DRUG", {"PRESCRIPTIONS", "DRUG"}},
        {"GENDER", {"DEMOGRAPHIC", "GENDER"}},
        {"ROUTE", {"PRESCRIPTIONS", "ROUTE"}}}},
      {"demo-join-lab",
       "how many patients insured by [INS] had a [LABEL] test on [FLUID]?",
       count_subjects + "FROM DEMOGRAPHIC" + join("DEMOGRAPHIC", "LAB") +
           " WHERE DEMOGRAPHIC.\"INSURANCE\" = \"[INS]\" AND LAB.\"LABEL\" = \"[LABEL]\" "
           "AND LAB.\"FLUID\" = \"[FLUID]\"",
       {{"FLUID", {"LAB", "FLUID"}}, {"INS", {"DEMOGRAPHIC", "INSURANCE"}},
        {"LABEL", {"LAB", "LABEL"}}}},
      {"demo-join-diagnosis",
       "what is the maximum age of [MARITAL] patients diagnosed with [DX]?",
       "SELECT MAX ( DEMOGRAPHIC.\"AGE\" ) FROM DEMOGRAPHIC" + join("DEMOGRAPHIC", "DIAGNOSES") +
           " WHERE DEMOGRAPHIC.\"MARITAL_STATUS\" = \"[MARITAL]\" AND DIAGNOSES.\"SHORT_TITLE\" = \"[DX]\"",
       {{"DX", {"DIAGNOSES", "SHORT_TITLE"}}, {"MARITAL", {"DEMOGRAPHIC", "MARITAL_STATUS"}}}},
      {"diagnosis-language",
       "list the diagnosis codes of [LANG] speakers with diagnosis [DX]",
       "SELECT DIAGNOSES.\"ICD9_CODE\" FROM DIAGNOSES" + join("DIAGNOSES", "DEMOGRAPHIC") +
           " WHERE DIAGNOSES.\"SHORT_TITLE\" = \"[DX]\" AND DEMOGRAPHIC.\"LANGUAGE\" = \"[LANG]\"",
       {{"DX", {"DIAGNOSES", "SHORT_TITLE"}}, {"LANG", {"DEMOGRAPHIC", "LANGUAGE"}}}},
      {"procedure-gender-language",
       "how many [GENDER] [LANG] speakers had procedure [PROC]?",
       "SELECT COUNT ( DISTINCT PROCEDURES.\"SUBJECT_ID\" ) FROM PROCEDURES" +
           join("PROCEDURES", "DEMOGRAPHIC") +
           " WHERE PROCEDURES.\"SHORT_TITLE\" = \"[PROC]\" AND DEMOGRAPHIC.\"GENDER\" = \"[GENDER]\" "
           "AND DEMOGRAPHIC.\"LANGUAGE\" = \"[LANG]\"",
       {{"GENDER", {"DEMOGRAPHIC", "GENDER"}}, {"LANG", {"DEMOGRAPHIC", "LANGUAGE"}},
        {"PROC", {"PROCEDURES", "SHORT_TITLE"}}}},
      {"procedure-subject",
       "what procedures did patient [SUBJ] undergo?",
       "SELECT PROCEDURES.\"SHORT_TITLE\" FROM PROCEDURES WHERE PROCEDURES.\"SUBJECT_ID\" = \"[SUBJ]\"",
       {{"SUBJ", {"PROCEDURES", "SUBJECT_ID"}}}},
      {"drug-route-type",
       "how many [TYPE] prescriptions of [DRUG] were given by [ROUTE]?",
       "SELECT COUNT ( * ) FROM PRESCRIPTIONS WHERE PRESCRIPTIONS.\"DRUG\" = \"[DRUG]\" "
       "AND PRESCRIPTIONS.\"ROUTE\" = \"[ROUTE]\" AND PRESCRIPTIONS.\"DRUG_TYPE\" = \"[TYPE]\"",
       {{"DRUG", {"PRESCRIPTIONS", "DRUG"}}, {"ROUTE", {"PRESCRIPTIONS", "ROUTE"}},
        {"TYPE", {"PRESCRIPTIONS", "DRUG_TYPE"}}}},
      {"drug-insurance",
       "provide the number of patients covered by [INS] who were prescribed [DRUG]",
       "SELECT COUNT ( DISTINCT PRESCRIPTIONS.\"SUBJECT_ID\" ) FROM PRESCRIPTIONS" +
           join("PRESCRIPTIONS", "DEMOGRAPHIC") +
           " WHERE PRESCRIPTIONS.\"DRUG\" = \"[DRUG]\" AND DEMOGRAPHIC.\"INSURANCE\" = \"[INS]\"",
       {{"DRUG", {"PRESCRIPTIONS", "DRUG"}}, {"INS", {"DEMOGRAPHIC", "INSURANCE"}}}},
      {"drug-subject",
       "what drugs and doses were prescribed to patient [SUBJ]?",
       "SELECT PRESCRIPTIONS.\"DRUG\" , PRESCRIPTIONS.\"DRUG_DOSE\" FROM PRESCRIPTIONS "
       "WHERE PRESCRIPTIONS.\"SUBJECT_ID\" = \"[SUBJ]\"",
       {{"SUBJ", {"PRESCRIPTIONS", "SUBJECT_ID"}}}},
      {"lab-label-fluid-category",
       "how many [CAT] [LABEL] tests were run on [FLUID]?",
       "SELECT COUNT ( * ) FROM LAB WHERE LAB.\"LABEL\" = \"[LABEL]\" AND LAB.\"FLUID\" = \"[FLUID]\" "
       "AND LAB.\"CATEGORY\" = \"[CAT]\"",
       {{"CAT", {"LAB", "CATEGORY"}}, {"FLUID", {"LAB", "FLUID"}}, {"LABEL", {"LAB", "LABEL"}}}},
      {"lab-flag-label",
       "find the number of [LABEL] results flagged [FLAG]",
       "SELECT COUNT ( * ) FROM LAB WHERE LAB.\"LABEL\" = \"[LABEL]\" AND LAB.\"FLAG\" = \"[FLAG]\"",
       {{"FLAG", {"LAB", "FLAG"}}, {"LABEL", {"LAB", "LABEL"}}}},
      {"lab-subject",
       "what is the earliest chart time of any lab test of patient [SUBJ]?",
       "SELECT MIN ( LAB.\"CHARTTIME\" ) FROM LAB WHERE LAB.\"SUBJECT_ID\" = \"[SUBJ]\"",
       {{"SUBJ", {"LAB", "SUBJECT_ID"}}}},
  };
  return t;
}

}  // namespace medsql
