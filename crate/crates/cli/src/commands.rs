use std::fmt::Write as _;
use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use defect_forge_core::algebra::mpoly::KPoly;
use defect_forge_core::algebra::parse::{parse_poly_file, parse_rational};
use defect_forge_core::algebra::rational::Rational;
use defect_forge_core::algebra::RatFunc;
use defect_forge_core::degeneracy::{degeneracy_locus, jacobian_det, PipelineOptions, PipelineReport};
use defect_forge_core::derivation::{du_apply, du_coprime, Coprimality, UModel};
use defect_forge_core::exceptional::{build_z_n2, build_z_projective, gcd_params, ExceptionalDescription};
use defect_forge_core::lattice::extend_to_basis;
use defect_forge_core::nullstellensatz::{check_weak_general_position, find_certificate, verify_certificate, Certificate};
use defect_forge_core::specialization::{compute_sigma, specialization_ok};
use defect_forge_core::Error as CoreError;
use defect_forge_nevanlinna::curve::parse_component;
use defect_forge_nevanlinna::{defect_report, CurveSpec, ReportOptions};

use crate::args::{Command, Global};
use crate::error::{CliError, CliResult};

/// What a command produced: the artifact and notes for stderr.
pub struct Output {
    pub artifact: Vec<u8>,
    pub notes: String,
}

impl Output {
    fn text(s: String) -> Self {
        Output {
            artifact: s.into_bytes(),
            notes: String::new(),
        }
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    match fs::read(path) {
        Ok(bytes) => String::from_utf8(bytes)
            .map_err(|_| CliError::Core(CoreError::invalid(format!("{} is not UTF-8", path.display())))),
        Err(e) if e.kind() == ErrorKind::NotFound => Err(CliError::Missing(path.to_path_buf())),
        Err(e) => Err(CliError::Io(path.to_path_buf(), e)),
    }
}

fn degrees(p: &KPoly) -> String {
    p.degrees_present().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn load_forms(path: &Path, g: &Global) -> CliResult<Vec<KPoly>> {
    let forms = parse_poly_file(&read(path)?)?;
    if forms.is_empty() {
        return Err(CoreError::invalid(format!("{}: no polynomials", path.display())).into());
    }
    if g.require_homogeneous {
        for (i, f) in forms.iter().enumerate() {
            if !f.is_homogeneous() {
                return Err(CoreError::invalid(format!("polynomial {} has mixed degrees {}", i + 1, degrees(f))).into());
            }
        }
    }
    Ok(forms)
}

fn load_one(path: &Path, g: &Global) -> CliResult<KPoly> {
    let mut forms = load_forms(path, g)?;
    if forms.len() != 1 {
        return Err(CoreError::invalid(format!("{}: expected one polynomial, found {}", path.display(), forms.len())).into());
    }
    Ok(forms.remove(0))
}

fn rational(src: &str, what: &str) -> CliResult<Rational> {
    parse_rational(src).map_err(|e| CoreError::invalid(format!("{what}: {e}")).into())
}

pub fn run(cmd: &Command, g: &Global) -> CliResult<Output> {
    match cmd {
        Command::CheckPosition(a) => {
            let forms = load_forms(&a.forms, g)?;
            let w = check_weak_general_position(&forms)?;
            Ok(Output::text(format!(
                "weakly general position: yes\nwitness t = {}\nsamples = {}\n",
                w.z0, w.samples
            )))
        }
        Command::Nullstellensatz(a) => {
            let forms = load_forms(&a.forms, g)?;
            let cert = find_certificate(&forms)?;
            Ok(Output::text(cert.to_text()))
        }
        Command::VerifyCertificate { forms, certificate } => {
            let forms = load_forms(&forms.forms, g)?;
            let cert = Certificate::<RatFunc>::from_text(&read(certificate)?)?;
            let v = verify_certificate(&forms, &cert);
            if v.ok {
                Ok(Output::text(format!("certificate verified: s = {}, R = {}\n", cert.s, cert.r)))
            } else {
                Err(CliError::Verification(v.reason.unwrap_or_default()))
            }
        }
        Command::Jacobian(a) => {
            let forms = load_forms(&a.forms, g)?;
            Ok(Output::text(format!("{}\n", jacobian_det(&forms)?)))
        }
        Command::DegeneracyLocus {
            forms,
            epsilon,
            kappa,
            budget,
            all_factors,
            assert_transversal,
        } => {
            let forms = load_forms(&forms.forms, g)?;
            let opts = PipelineOptions {
                epsilon: epsilon.as_deref().map(|e| rational(e, "--epsilon")).transpose()?,
                kappa: rational(kappa, "--kappa")?,
                budget: *budget,
                all_factors: *all_factors,
                assert_transversal: *assert_transversal,
            };
            let report = degeneracy_locus(&forms, &opts)?;
            Ok(Output::text(render_pipeline(&report)))
        }
        Command::DuOperator { poly, model } => {
            let f = load_one(poly, g)?;
            let mut comps = Vec::new();
            for (i, raw) in read(model)?.lines().enumerate() {
                let l = raw.split('#').next().unwrap_or("");
                if !l.trim().is_empty() {
                    comps.push(parse_component(l, i + 1)?);
                }
            }
            let u = UModel::from_realization(comps)?;
            let d = du_apply(&f, &u)?;
            let mut out = format!("{d}\n");
            let mut notes = String::new();
            match du_coprime(&f, &u) {
                Ok(Coprimality::Coprime) => notes.push_str("gcd(F, D_u F) = 1\n"),
                Ok(Coprimality::MonomialRelation { relation, common_factor }) => {
                    let r: Vec<String> = relation.iter().map(|x| x.to_string()).collect();
                    writeln!(notes, "gcd(F, D_u F) = {common_factor}\nrelation = ({})", r.join(", ")).unwrap();
                }
                Err(e) => writeln!(notes, "coprimality not decided: {e}").unwrap(),
            }
            if g.output.is_none() {
                out.push_str(&notes);
                notes.clear();
            }
            Ok(Output {
                artifact: out.into_bytes(),
                notes,
            })
        }
        Command::SpecializeSigma { poly, params, lambda } => {
            let f = load_one(poly, g)?;
            let q = f
                .to_rational()
                .ok_or_else(|| CoreError::invalid("the polynomial must have rational coefficients"))?;
            let idx: Vec<usize> = params
                .iter()
                .map(|p| {
                    q.var_index(p)
                        .ok_or_else(|| CliError::Core(CoreError::invalid(format!("'{p}' is not a variable of the polynomial"))))
                })
                .collect::<CliResult<_>>()?;
            let sigma = compute_sigma(&q, &idx)?;
            let mut out = format!("params: {}\n", sigma.params.join(" "));
            for gen in &sigma.generators {
                writeln!(out, "{gen}").unwrap();
            }
            if let Some(lambda) = lambda {
                if lambda.len() != idx.len() {
                    return Err(CliError::Usage(format!("--lambda needs {} values", idx.len())));
                }
                let point: Vec<Rational> = lambda.iter().map(|s| rational(s, "--lambda")).collect::<CliResult<_>>()?;
                writeln!(out, "admissible = {}", sigma.admits(&point)).unwrap();
                writeln!(out, "specialization ok = {}", specialization_ok(&q, &idx, &point)).unwrap();
            }
            Ok(Output::text(out))
        }
        Command::LatticeExtend { vector } => Ok(Output::text(format!("{}\n", extend_to_basis(vector)?))),
        Command::ExceptionalSet {
            form,
            epsilon,
            kappa,
            budget,
            n2,
        } => {
            let f = load_one(form, g)?;
            let desc = match n2 {
                Some(rel) => {
                    let [n1, n2] = rel[..] else {
                        return Err(CliError::Usage("--n2 takes two integers n1,n2".into()));
                    };
                    build_z_n2(&f, n1, n2)?
                }
                None => build_z_projective(&f, &rational(epsilon, "--epsilon")?, &rational(kappa, "--kappa")?, *budget)?,
            };
            Ok(Output::text(render_exceptional(&desc, *budget)))
        }
        Command::GcdParams { n, d, epsilon, kappa, l } => {
            let p = gcd_params(*n, *d, &rational(epsilon, "--epsilon")?, &rational(kappa, "--kappa")?, *l)?;
            Ok(Output::text(format!("{p}\nholds = {}\nexhaustive = {}\n", p.holds(), p.exhaustive)))
        }
        Command::Nevanlinna {
            curve,
            divisors,
            rmin,
            rmax,
            grid,
        } => {
            let c = CurveSpec::parse(&read(curve)?)?;
            let mut divs = parse_poly_file(&read(divisors)?)?;
            let names: Vec<String> = (0..c.components.len()).map(|i| format!("x{i}")).collect();
            for d in &mut divs {
                if d.vars() != names.as_slice() {
                    *d = d.with_vars(&names).map_err(|_| {
                        CoreError::invalid(format!("divisor {d} must use the variables {}", names.join(" ")))
                    })?;
                }
                if !d.is_homogeneous() {
                    return Err(CoreError::invalid(format!("divisor {d} has mixed degrees {}", degrees(d))).into());
                }
            }
            let opts = ReportOptions {
                rmin: *rmin,
                rmax: *rmax,
                grid: *grid,
                seed: g.seed,
                ..ReportOptions::default()
            };
            let table = defect_report(&c, &divs, &opts)?;
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            Ok(Output {
                artifact: buf,
                notes: table.summary_text(),
            })
        }
    }
}

fn render_pipeline(r: &PipelineReport) -> String {
    let mut s = String::new();
    let ex: Vec<String> = r.pi.exponents.iter().map(|a| a.to_string()).collect();
    writeln!(s, "G = {}", r.g).unwrap();
    writeln!(s, "exponents = {}", ex.join(" ")).unwrap();
    for (i, run) in r.runs.iter().enumerate() {
        writeln!(s, "[factor {}]", i + 1).unwrap();
        writeln!(s, "G~ = {}", run.g_tilde).unwrap();
        writeln!(s, "A = {}", run.a).unwrap();
        writeln!(s, "H = {}", run.h).unwrap();
        writeln!(s, "B0 = {}", run.b0).unwrap();
        writeln!(s, "B = {}", run.b).unwrap();
        for t in &run.description.polynomials {
            writeln!(s, "  {}  # {}", t.poly, t.tag).unwrap();
        }
    }
    writeln!(s, "[summary]").unwrap();
    writeln!(s, "B = {}", r.b).unwrap();
    writeln!(s, "degree_bound: {}", r.degree_bound).unwrap();
    writeln!(s, "degree_B: {}", r.b.total_degree()).unwrap();
    writeln!(s, "divisibility_check: {}", r.divisibility_check).unwrap();
    writeln!(s, "epsilon: {}", r.epsilon).unwrap();
    writeln!(s, "budget: {}", r.budget).unwrap();
    writeln!(s, "budget_exhausted: {}", r.budget_exhausted).unwrap();
    writeln!(s, "transversality: {}", r.transversality).unwrap();
    s
}

fn render_exceptional(d: &ExceptionalDescription, budget: usize) -> String {
    let mut s = String::new();
    if let Some(n2) = &d.n2 {
        writeln!(s, "relation = ({}, {})", n2.relation.0, n2.relation.1).unwrap();
        writeln!(s, "B = {}", n2.b).unwrap();
        for (label, list) in [("gamma", &n2.gamma), ("alpha", &n2.alpha), ("R", &n2.r_set)] {
            let items: Vec<String> = list
                .iter()
                .map(|r| match &r.value {
                    Some(v) => v.to_string(),
                    None => format!("root of {}", r.factor),
                })
                .collect();
            writeln!(s, "{label} = {{{}}}", items.join(", ")).unwrap();
        }
    }
    if let Some(p) = &d.params {
        writeln!(s, "kappa = {}", p.kappa).unwrap();
        writeln!(s, "m = {}", p.m).unwrap();
        writeln!(s, "M' = {}", p.m_prime).unwrap();
        writeln!(s, "budget = {budget}").unwrap();
    }
    writeln!(s, "budget_exhausted = {}", d.budget_exhausted).unwrap();
    writeln!(s, "polynomials = {}", d.polynomials.len()).unwrap();
    for t in &d.polynomials {
        writeln!(s, "{}  # {}", t.poly, t.tag).unwrap();
    }
    s
}
