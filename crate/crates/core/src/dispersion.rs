//! Temperature-dependent refractive index models for uniaxial crystals.
//!
//! Models are described by small key = value text files (see `data/`) holding
//! a 13-coefficient Sellmeier expansion per axis together with the validity
//! ranges. Queries outside the declared wavelength or temperature range are
//! errors, never extrapolations.

use crate::error::{Error, Result};
use std::path::Path;

/// Polarization axis of a uniaxial crystal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Ordinary,
    Extraordinary,
}

/// Functional form of the index expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SellmeierForm {
    /// n^2 = a1 + b1 f + (a2 + b2 f)/(x^2 - (a3 + b3 f)^2)
    ///     + (a4 + b4 f)/(x^2 - a5^2) + (a7 + b5 f)/(x^2 - a8^2) - a6 x^2
    /// with f(T) = (T - Tref)(T + Tref + 546.32), x in um, T in C.
    Sellmeier13,
}

const COEFF_COUNT: usize = 13;

/// A loaded dispersion model for one crystal: both axes plus validity ranges.
#[derive(Debug, Clone)]
pub struct DispersionModel {
    crystal: String,
    form: SellmeierForm,
    temp_reference_c: f64,
    lambda_range_um: (f64, f64),
    temp_range_c: (f64, f64),
    ne: [f64; COEFF_COUNT],
    no: [f64; COEFF_COUNT],
}

impl DispersionModel {
    /// Loads a model from a `.sellmeier` file on disk.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Returns one of the models bundled into the library.
    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name {
            "ppslt" => include_str!("../data/ppslt.sellmeier"),
            "ppln" => include_str!("../data/ppln.sellmeier"),
            _ => {
                return Err(Error::UnknownCrystal {
                    name: name.to_string(),
                })
            }
        };
        Self::parse(text, &format!("builtin:{name}"))
    }

    /// Parses the key = value model format. `origin` labels error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            line,
            message,
        };

        let mut crystal: Option<String> = None;
        let mut form: Option<SellmeierForm> = None;
        let mut temp_reference_c: Option<f64> = None;
        let mut lambda_range_um: Option<(f64, f64)> = None;
        let mut temp_range_c: Option<(f64, f64)> = None;
        let mut ne: Option<[f64; COEFF_COUNT]> = None;
        let mut no: Option<[f64; COEFF_COUNT]> = None;
        let mut ne_line = 0;
        let mut no_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(lineno, "expected `key = value`".to_string()))?;
            let key = key.trim();
            let value = value.trim();

            let floats = |key: &str, value: &str| -> Result<Vec<f64>> {
                value
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<f64>().map_err(|_| {
                            parse_err(lineno, format!("bad number `{}` in `{key}`", tok.trim()))
                        })
                    })
                    .collect()
            };
            let pair = |key: &str, value: &str| -> Result<(f64, f64)> {
                let v = floats(key, value)?;
                if v.len() != 2 {
                    return Err(parse_err(
                        lineno,
                        format!("`{key}` needs exactly two values, got {}", v.len()),
                    ));
                }
                if v[0] >= v[1] {
                    return Err(parse_err(lineno, format!("`{key}` must be min, max")));
                }
                Ok((v[0], v[1]))
            };
            let coeffs = |key: &'static str, value: &str| -> Result<[f64; COEFF_COUNT]> {
                let v = floats(key, value)?;
                let got = v.len();
                v.try_into().map_err(|_| Error::CoefficientCount {
                    origin: origin.to_string(),
                    axis: key,
                    expected: COEFF_COUNT,
                    got,
                })
            };
            let duplicate = |key: &str| parse_err(lineno, format!("duplicate key `{key}`"));

            match key {
                "crystal" => {
                    if crystal.is_some() {
                        return Err(duplicate(key));
                    }
                    if value.is_empty() {
                        return Err(parse_err(lineno, "`crystal` must not be empty".to_string()));
                    }
                    crystal = Some(value.to_string());
                }
                "form" => {
                    if form.is_some() {
                        return Err(duplicate(key));
                    }
                    form = Some(match value {
                        "sellmeier13" => SellmeierForm::Sellmeier13,
                        other => {
                            return Err(Error::UnknownForm {
                                origin: origin.to_string(),
                                form: other.to_string(),
                            })
                        }
                    });
                }
                "temp_reference_c" => {
                    if temp_reference_c.is_some() {
                        return Err(duplicate(key));
                    }
                    temp_reference_c = Some(floats(key, value)?.into_iter().next().unwrap());
                }
                "lambda_range_um" => {
                    if lambda_range_um.is_some() {
                        return Err(duplicate(key));
                    }
                    let r = pair(key, value)?;
                    if r.0 <= 0.0 {
                        return Err(parse_err(
                            lineno,
                            "`lambda_range_um` must be positive".to_string(),
                        ));
                    }
                    lambda_range_um = Some(r);
                }
                "temp_range_c" => {
                    if temp_range_c.is_some() {
                        return Err(duplicate(key));
                    }
                    temp_range_c = Some(pair(key, value)?);
                }
                "ne_coeffs" => {
                    if ne.is_some() {
                        return Err(duplicate(key));
                    }
                    ne = Some(coeffs("ne_coeffs", value)?);
                    ne_line = lineno;
                }
                "no_coeffs" => {
                    if no.is_some() {
                        return Err(duplicate(key));
                    }
                    no = Some(coeffs("no_coeffs", value)?);
                    no_line = lineno;
                }
                other => {
                    return Err(parse_err(lineno, format!("unknown key `{other}`")));
                }
            }
        }

        let missing = |key: &'static str| Error::MissingKey {
            origin: origin.to_string(),
            key,
        };
        let model = DispersionModel {
            crystal: crystal.ok_or_else(|| missing("crystal"))?,
            form: form.ok_or_else(|| missing("form"))?,
            temp_reference_c: temp_reference_c.ok_or_else(|| missing("temp_reference_c"))?,
            lambda_range_um: lambda_range_um.ok_or_else(|| missing("lambda_range_um"))?,
            temp_range_c: temp_range_c.ok_or_else(|| missing("temp_range_c"))?,
            ne: ne.ok_or_else(|| missing("ne_coeffs"))?,
            no: no.ok_or_else(|| missing("no_coeffs"))?,
        };

        // Coarse sweep of the declared domain: the expansion must stay finite
        // and above 1 everywhere, otherwise the coefficients are unusable.
        for (axis, name, line) in [
            (Axis::Extraordinary, "ne", ne_line),
            (Axis::Ordinary, "no", no_line),
        ] {
            for i in 0..=8 {
                let lam = model.lambda_range_um.0
                    + (model.lambda_range_um.1 - model.lambda_range_um.0) * i as f64 / 8.0;
                for j in 0..=4 {
                    let t = model.temp_range_c.0
                        + (model.temp_range_c.1 - model.temp_range_c.0) * j as f64 / 4.0;
                    let n = model.index_unchecked(lam, t, axis);
                    if !n.is_finite() || n <= 1.0 {
                        return Err(parse_err(
                            line,
                            format!(
                                "{name} is not physical on the declared domain \
                                 (n = {n:.4} at {lam:.3} um, {t:.1} C)"
                            ),
                        ));
                    }
                }
            }
        }
        Ok(model)
    }

    pub fn crystal(&self) -> &str {
        &self.crystal
    }

    pub fn form(&self) -> SellmeierForm {
        self.form
    }

    /// Inclusive wavelength validity range in um.
    pub fn lambda_range_um(&self) -> (f64, f64) {
        self.lambda_range_um
    }

    /// Inclusive temperature validity range in degrees C.
    pub fn temp_range_c(&self) -> (f64, f64) {
        self.temp_range_c
    }

    pub(crate) fn check_lambda(&self, lambda_um: f64) -> Result<()> {
        let (lo, hi) = self.lambda_range_um;
        if !(lambda_um >= lo && lambda_um <= hi) {
            return Err(Error::WavelengthOutOfRange {
                lambda_um,
                min_um: lo,
                max_um: hi,
            });
        }
        Ok(())
    }

    pub(crate) fn check_temp(&self, temp_c: f64) -> Result<()> {
        let (lo, hi) = self.temp_range_c;
        if !(temp_c >= lo && temp_c <= hi) {
            return Err(Error::TemperatureOutOfRange {
                temp_c,
                min_c: lo,
                max_c: hi,
            });
        }
        Ok(())
    }

    /// Refractive index at `lambda_um`, `temp_c` on `axis`.
    ///
    /// Errors when the query lies outside the declared validity ranges.
    pub fn refractive_index(&self, lambda_um: f64, temp_c: f64, axis: Axis) -> Result<f64> {
        self.check_lambda(lambda_um)?;
        self.check_temp(temp_c)?;
        Ok(self.index_unchecked(lambda_um, temp_c, axis))
    }

    /// Birefringence n_e - n_o at `lambda_um`, `temp_c`.
    pub fn birefringence(&self, lambda_um: f64, temp_c: f64) -> Result<f64> {
        self.check_lambda(lambda_um)?;
        self.check_temp(temp_c)?;
        Ok(self.index_unchecked(lambda_um, temp_c, Axis::Extraordinary)
            - self.index_unchecked(lambda_um, temp_c, Axis::Ordinary))
    }

    /// Index evaluation without range checks, for solver inner loops that
    /// already validated their grids. The expansion is analytic away from
    /// its UV poles, so transient bracketing excursions stay well defined.
    pub(crate) fn index_unchecked(&self, lambda_um: f64, temp_c: f64, axis: Axis) -> f64 {
        let c = match axis {
            Axis::Extraordinary => &self.ne,
            Axis::Ordinary => &self.no,
        };
        let tref = self.temp_reference_c;
        let f = (temp_c - tref) * (temp_c + tref + 546.32);
        let x2 = lambda_um * lambda_um;
        let pole1 = c[2] + c[10] * f;
        let n2 = c[0] + c[8] * f
            + (c[1] + c[9] * f) / (x2 - pole1 * pole1)
            + (c[3] + c[11] * f) / (x2 - c[4] * c[4])
            + (c[6] + c[12] * f) / (x2 - c[7] * c[7])
            - c[5] * x2;
        n2.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::io::Write as _;

    fn ppslt() -> DispersionModel {
        DispersionModel::builtin("ppslt").unwrap()
    }

    fn ppln() -> DispersionModel {
        DispersionModel::builtin("ppln").unwrap()
    }

    #[test]
    fn ppslt_pinned_indices() {
        let m = ppslt();
        let cases = [
            // (lambda_um, temp_c, n_e, n_o)
            (0.955, 81.8, 2.137361845843087, 2.137177286303375),
            (0.998, 81.8, 2.134883032888628, 2.1346931317285676),
            (1.0, 81.8, 2.1347738448770226, 2.13458363609551),
            (0.5, 60.0, 2.210589379115949, 2.2120584077976986),
            (3.0, 110.0, 2.067188084963261, 2.064760385100712),
            (4.8, 95.0, 1.886857253222477, 1.8843998787509049),
        ];
        for (lam, t, ne, no) in cases {
            assert_relative_eq!(
                m.refractive_index(lam, t, Axis::Extraordinary).unwrap(),
                ne,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                m.refractive_index(lam, t, Axis::Ordinary).unwrap(),
                no,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn ppln_pinned_indices() {
        let m = ppln();
        assert_relative_eq!(
            m.refractive_index(1.0, 85.0, Axis::Extraordinary).unwrap(),
            2.1694827439476865,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            m.refractive_index(1.0, 85.0, Axis::Ordinary).unwrap(),
            2.2412142575724077,
            max_relative = 1e-12
        );
    }

    #[test]
    fn birefringence_is_index_difference() {
        let m = ppslt();
        let ne = m.refractive_index(1.2, 90.0, Axis::Extraordinary).unwrap();
        let no = m.refractive_index(1.2, 90.0, Axis::Ordinary).unwrap();
        assert_relative_eq!(m.birefringence(1.2, 90.0).unwrap(), ne - no);
    }

    #[test]
    fn ppslt_birefringence_stays_small() {
        let m = ppslt();
        for t in [60.0, 81.8, 110.0] {
            for k in 0..=46 {
                let lam = (4 + k) as f64 / 10.0;
                assert!(
                    m.birefringence(lam, t).unwrap().abs() < 0.004,
                    "|dn| too large at {lam} um, {t} C"
                );
            }
        }
    }

    #[test]
    fn ppln_birefringence_stays_large() {
        let m = ppln();
        for t in [20.0, 57.5, 95.0] {
            for k in 0..=35 {
                let lam = (5 + k) as f64 / 10.0;
                assert!(
                    m.birefringence(lam, t).unwrap().abs() > 0.05,
                    "|dn| too small at {lam} um, {t} C"
                );
            }
        }
    }

    #[test]
    fn index_is_continuous_in_wavelength() {
        let m = ppslt();
        for k in 0..=250 {
            let lam = 0.5 + 0.01 * k as f64;
            let a = m.refractive_index(lam, 81.8, Axis::Extraordinary).unwrap();
            let b = m
                .refractive_index(lam + 1e-4, 81.8, Axis::Extraordinary)
                .unwrap();
            assert!((a - b).abs() < 1e-3);
        }
    }

    #[test]
    fn range_boundaries_are_inclusive() {
        let m = ppslt();
        assert!(m.refractive_index(0.4, 60.0, Axis::Ordinary).is_ok());
        assert!(m.refractive_index(5.0, 110.0, Axis::Ordinary).is_ok());
        assert!(matches!(
            m.refractive_index(0.399, 80.0, Axis::Ordinary),
            Err(Error::WavelengthOutOfRange { .. })
        ));
        assert!(matches!(
            m.refractive_index(5.001, 80.0, Axis::Ordinary),
            Err(Error::WavelengthOutOfRange { .. })
        ));
        assert!(matches!(
            m.refractive_index(1.0, 59.9, Axis::Ordinary),
            Err(Error::TemperatureOutOfRange { .. })
        ));
        assert!(matches!(
            m.refractive_index(1.0, 110.1, Axis::Ordinary),
            Err(Error::TemperatureOutOfRange { .. })
        ));
    }

    #[test]
    fn nan_queries_are_rejected() {
        let m = ppslt();
        assert!(m.refractive_index(f64::NAN, 80.0, Axis::Ordinary).is_err());
        assert!(m.refractive_index(1.0, f64::NAN, Axis::Ordinary).is_err());
    }

    #[test]
    fn load_from_file_matches_builtin() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("copy.sellmeier");
        let mut file = std::fs::File::create(&path).unwrap();
        file.write_all(include_str!("../data/ppslt.sellmeier").as_bytes())
            .unwrap();
        drop(file);
        let loaded = DispersionModel::load(&path).unwrap();
        let builtin = ppslt();
        assert_eq!(loaded.crystal(), builtin.crystal());
        assert_eq!(loaded.lambda_range_um(), builtin.lambda_range_um());
        let a = loaded.refractive_index(1.3, 77.0, Axis::Extraordinary).unwrap();
        let b = builtin
            .refractive_index(1.3, 77.0, Axis::Extraordinary)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_file_reports_io_error() {
        let err = DispersionModel::load(Path::new("/nonexistent/foo.sellmeier")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn unknown_builtin_is_rejected() {
        assert!(matches!(
            DispersionModel::builtin("bbo"),
            Err(Error::UnknownCrystal { .. })
        ));
    }

    const VALID: &str = "crystal = demo\nform = sellmeier13\ntemp_reference_c = 24.5\n\
        lambda_range_um = 0.5, 4.0\ntemp_range_c = 20, 95\n\
        ne_coeffs = 5.756, 0.0983, 0.2020, 189.32, 12.52, 1.32e-2, 0, 0, 2.860e-6, 4.700e-8, 6.113e-8, 1.516e-4, 0\n\
        no_coeffs = 5.653, 0.1185, 0.2091, 89.61, 10.85, 1.97e-2, 0, 0, 7.941e-7, 3.134e-8, -4.641e-9, -2.188e-6, 0\n";

    #[test]
    fn valid_text_parses() {
        let m = DispersionModel::parse(VALID, "test").unwrap();
        assert_eq!(m.crystal(), "demo");
        assert_eq!(m.form(), SellmeierForm::Sellmeier13);
    }

    #[test]
    fn parse_errors_are_specific() {
        let missing = VALID.replace("crystal = demo\n", "");
        assert!(matches!(
            DispersionModel::parse(&missing, "test"),
            Err(Error::MissingKey { key: "crystal", .. })
        ));

        let bad_form = VALID.replace("sellmeier13", "sellmeier5");
        assert!(matches!(
            DispersionModel::parse(&bad_form, "test"),
            Err(Error::UnknownForm { .. })
        ));

        let short = VALID.replace(", 1.516e-4, 0\n", ", 1.516e-4\n");
        match DispersionModel::parse(&short, "test") {
            Err(Error::CoefficientCount {
                axis,
                expected,
                got,
                ..
            }) => {
                assert_eq!(axis, "ne_coeffs");
                assert_eq!(expected, 13);
                assert_eq!(got, 12);
            }
            other => panic!("expected CoefficientCount, got {other:?}"),
        }

        let bad_number = VALID.replace("temp_reference_c = 24.5", "temp_reference_c = warm");
        assert!(matches!(
            DispersionModel::parse(&bad_number, "test"),
            Err(Error::Parse { line: 3, .. })
        ));

        let unknown_key = format!("{VALID}poling = fine\n");
        assert!(matches!(
            DispersionModel::parse(&unknown_key, "test"),
            Err(Error::Parse { line: 8, .. })
        ));

        let duplicate = format!("{VALID}crystal = again\n");
        assert!(matches!(
            DispersionModel::parse(&duplicate, "test"),
            Err(Error::Parse { line: 8, .. })
        ));

        let no_equals = VALID.replace("form = sellmeier13", "form sellmeier13");
        assert!(matches!(
            DispersionModel::parse(&no_equals, "test"),
            Err(Error::Parse { line: 2, .. })
        ));

        let inverted_range = VALID.replace("lambda_range_um = 0.5, 4.0", "lambda_range_um = 4.0, 0.5");
        assert!(matches!(
            DispersionModel::parse(&inverted_range, "test"),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn unphysical_coefficients_are_rejected() {
        // Force n^2 < 0 across the domain by negating the constant term.
        let broken = VALID.replace("ne_coeffs = 5.756", "ne_coeffs = -5.756");
        let err = DispersionModel::parse(&broken, "test").unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 6);
                assert!(message.contains("not physical"));
            }
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# leading comment\n\n{VALID}# trailing comment\n");
        assert!(DispersionModel::parse(&text, "test").is_ok());
    }
}
