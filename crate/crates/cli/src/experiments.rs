//! One runner per command. Each returns a [`Report`]; writing is the
//! caller's job.

use weyl_billiard::gates::{named_gate, InfoContent, NamedGate};
use weyl_billiard::random::{
    cpe_diagonal, generic_alpha, haar_unitary, random_local, EnsembleKind, EnsembleSpec,
    RandomStream,
};
use weyl_billiard::schmidt::{
    analytic_entropy, induced_state_spectrum, power_trajectory_entropies, EntropyKind,
};
use weyl_billiard::stats::{
    arcsine_cdf, arcsine_pdf, cpe_means, cue_means, ensemble_entropies, freeness_samples,
    gamma_entropies, gamma_quadrature, jackknife_moment_stderr, ks_distance, moments, mp_cdf,
    mp_pdf, spectral_samples, trajectory_entropy_values, try_chunked, EntropySamples, FreenessPair,
    Histogram, SpectralMode,
};
use weyl_billiard::weyl::{
    approximate_gate, chamber_class, extract_content, interlaced_contents, subcell,
    ApproximationOptions, ChamberClass, Trajectory, DEFAULT_ZERO_TOL, SUBCELLS,
};

use crate::config::{CliError, Command, EnsembleChoice, ExperimentConfig};
use crate::output::{Cell, Report, Table};

const JACKKNIFE_BLOCKS: usize = 100;

pub fn run(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Trajectory => run_trajectory(cfg),
        Command::Ensemble => run_ensemble(cfg),
        Command::Moments => run_moments(cfg),
        Command::Spectral => run_spectral(cfg),
        Command::Freeness => run_freeness(cfg),
        Command::Approximate => run_approximate(cfg),
        Command::Interlace => run_interlace(cfg),
        Command::Tables => run_tables(cfg),
    }
}

fn fmt_alpha(a: InfoContent) -> String {
    format!("{},{},{}", a.alpha[0], a.alpha[1], a.alpha[2])
}

/// One histogrammed quantity.
struct Series<'a> {
    name: &'a str,
    values: &'a [f64],
    lo: f64,
    hi: f64,
    reference: Option<fn(f64) -> f64>,
}

fn histogram_table(series: &[Series], bins: usize) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "quantity",
        "bin_lo",
        "bin_hi",
        "center",
        "count",
        "density",
        "reference",
    ]);
    for s in series {
        let mut h = Histogram::uniform(s.lo, s.hi, bins)?;
        h.extend(s.values.iter().copied());
        if h.underflow() + h.overflow() > 0 {
            table.meta(&format!("outside_{}", s.name), h.underflow() + h.overflow());
        }
        let density = h.density();
        for (i, w) in h.edges().windows(2).enumerate() {
            let center = 0.5 * (w[0] + w[1]);
            table.push(vec![
                s.name.into(),
                w[0].into(),
                w[1].into(),
                center.into(),
                h.counts()[i].into(),
                density[i].into(),
                s.reference.map(|f| f(center)).into(),
            ]);
        }
    }
    Ok(table)
}

/// Moment rows with jackknife errors and optional reference values.
fn moments_table(rows: &[(&str, &[f64], Option<f64>)]) -> Table {
    let mut table = Table::new(&[
        "quantity",
        "n",
        "mean",
        "second_moment",
        "variance",
        "stderr_mean",
        "stderr_second_moment",
        "reference_mean",
        "z_mean",
    ]);
    for &(name, values, reference) in rows {
        let m = moments(values);
        let se1 = jackknife_moment_stderr(values, 1, JACKKNIFE_BLOCKS);
        let se2 = jackknife_moment_stderr(values, 2, JACKKNIFE_BLOCKS);
        let z = reference.map(|r| (m.mean - r) / se1);
        table.push(vec![
            name.into(),
            m.n.into(),
            m.mean.into(),
            m.second_moment.into(),
            m.variance.into(),
            se1.into(),
            se2.into(),
            reference.into(),
            z.into(),
        ]);
    }
    table
}

fn entropy_series<'a>(e: &'a EntropySamples, d: usize, arcsine: bool) -> [Series<'a>; 2] {
    let df = d as f64;
    [
        Series {
            name: "S",
            values: &e.shannon,
            lo: 0.0,
            hi: df.ln(),
            reference: None,
        },
        Series {
            name: "S_L",
            values: &e.linear,
            lo: 0.0,
            hi: 1.0 - 1.0 / df,
            reference: arcsine.then_some(arcsine_pdf as fn(f64) -> f64),
        },
    ]
}

fn ks_arcsine_meta(table: &mut Table, linear: &[f64]) -> Result<(), CliError> {
    if linear.len() >= 2 {
        table.meta("ks_arcsine", ks_distance(linear, arcsine_cdf)?);
    }
    Ok(())
}

pub fn run_trajectory(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let steps = cfg.steps.unwrap_or(100_000);
    let mut rng = RandomStream::new(cfg.seed);
    let mut notes = Vec::new();
    let alpha = match cfg.alpha {
        Some(raw) => {
            let a = raw.canonical();
            if a.max_abs_diff(&raw) > 0.0 {
                notes.push(format!(
                    "alpha {} is outside the chamber; using its canonical form {}",
                    fmt_alpha(raw),
                    fmt_alpha(a)
                ));
            }
            a
        }
        None => generic_alpha(cfg.class.unwrap_or(ChamberClass::GammaIII), &mut rng),
    };
    let times: Vec<f64> = match cfg.dt {
        Some(dt) => (1..=steps).map(|k| k as f64 * dt).collect(),
        None => (1..=steps).map(|t| t as f64).collect(),
    };
    let traj = Trajectory::cartan(alpha, &times);
    let class = chamber_class(alpha, DEFAULT_ZERO_TOL);

    let mut main = Table::new(&["t", "alpha1", "alpha2", "alpha3", "S", "S_L"]);
    main.meta("alpha0", fmt_alpha(alpha));
    main.meta("chamber_class", class.roman());
    if !notes.is_empty() {
        main.meta("alpha_canonicalized", true);
    }
    for i in 0..traj.len() {
        let p = traj.points[i].alpha;
        main.push(vec![
            traj.times[i].into(),
            p[0].into(),
            p[1].into(),
            p[2].into(),
            traj.entropy[i].into(),
            traj.linear_entropy[i].into(),
        ]);
    }
    let mut report = Report::new(main);
    report.notes = notes;
    if !traj.is_empty() {
        let e = EntropySamples {
            shannon: traj.entropy.clone(),
            linear: traj.linear_entropy.clone(),
        };
        let is_edge = class == ChamberClass::GammaI;
        let mut hist = histogram_table(&entropy_series(&e, 4, is_edge), cfg.bins)?;
        if is_edge {
            ks_arcsine_meta(&mut hist, &e.linear)?;
        }
        report.sidecar("hist", hist);
        report.sidecar(
            "moments",
            moments_table(&[("S", &e.shannon, None), ("S_L", &e.linear, None)]),
        );
    }
    Ok(report)
}

fn gamma_reference(class: ChamberClass, kind: EntropyKind, power: i32) -> f64 {
    let (panels, order) = match class {
        ChamberClass::GammaIII => (6, 12),
        _ => (64, 20),
    };
    gamma_quadrature(class, panels, order, |a| {
        analytic_entropy(a, 1.0, kind).powi(power)
    })
}

pub fn run_ensemble(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let n = cfg.dims.unwrap_or(2);
    let d = n * n;
    let samples = cfg.samples.unwrap_or(100_000);
    let steps = cfg.steps.unwrap_or(100_000);
    let root = RandomStream::new(cfg.seed);
    let class = cfg.class.unwrap_or(ChamberClass::GammaIII);
    let both = [EntropyKind::Shannon, EntropyKind::Linear];
    let from_columns = |mut cols: Vec<Vec<f64>>| EntropySamples {
        linear: cols.pop().unwrap_or_default(),
        shannon: cols.pop().unwrap_or_default(),
    };

    let (e, references): (EntropySamples, Option<(f64, f64)>) = match cfg.ensemble {
        EnsembleChoice::Cue => {
            let spec = EnsembleSpec::new(EnsembleKind::Cue(d), cfg.seed)?;
            (ensemble_entropies(&spec, samples)?, cue_means(n).ok())
        }
        EnsembleChoice::Cpe => {
            let spec = EnsembleSpec::new(EnsembleKind::Cpe(d), cfg.seed)?;
            (ensemble_entropies(&spec, samples)?, cpe_means(n).ok())
        }
        EnsembleChoice::Gamma => {
            if n != 2 {
                return Err(CliError::Config("--ensemble gamma needs --dim 2".into()));
            }
            let refs = (
                gamma_reference(class, EntropyKind::Shannon, 1),
                gamma_reference(class, EntropyKind::Linear, 1),
            );
            (gamma_entropies(class, samples, cfg.seed), Some(refs))
        }
        EnsembleChoice::Trajectory => {
            let u = haar_unitary(d, &mut root.substream(0));
            let cols = power_trajectory_entropies(&u, steps, &both)?;
            (from_columns(cols), cue_means(n).ok())
        }
        EnsembleChoice::DiagonalTrajectory => {
            let u = cpe_diagonal(d, &mut root.substream(0));
            let cols = power_trajectory_entropies(&u, steps, &both)?;
            (from_columns(cols), cpe_means(n).ok())
        }
    };
    let arcsine = match cfg.ensemble {
        EnsembleChoice::Gamma => class == ChamberClass::GammaI,
        EnsembleChoice::Cpe | EnsembleChoice::DiagonalTrajectory => n == 2,
        _ => false,
    };
    let mut main = histogram_table(&entropy_series(&e, d, arcsine), cfg.bins)?;
    main.meta("ensemble", cfg.ensemble.name());
    main.meta("gate_dim", d);
    if arcsine {
        ks_arcsine_meta(&mut main, &e.linear)?;
    }
    let mut report = Report::new(main);
    report.sidecar(
        "moments",
        moments_table(&[
            ("S", &e.shannon, references.map(|r| r.0)),
            ("S_L", &e.linear, references.map(|r| r.1)),
        ]),
    );
    if cfg.ensemble == EnsembleChoice::Trajectory {
        report.notes.push(
            "one Haar gate keeps its eigenvectors; its powers match CUE moments only for large N"
                .into(),
        );
    }
    if matches!(
        cfg.ensemble,
        EnsembleChoice::Cue | EnsembleChoice::Trajectory
    ) {
        report
            .notes
            .push("CUE Shannon reference is the asymptotic ln N² − 1/2".into());
    }
    Ok(report)
}

/// Published `(⟨S⟩, ⟨S_L⟩, ⟨S²⟩, ⟨S_L²⟩)` per class; the three-decimal entries are truncated.
const CHAMBER_QUOTED: [[f64; 4]; 3] = [
    [0.386, 0.25, 0.205, 3.0 / 32.0],
    [0.772, 0.4375, 0.709, 233.0 / 1024.0],
    [1.028, 0.5625, 1.143, 351.0 / 1024.0],
];

struct MomentRow {
    group: &'static str,
    row: String,
    quantity: &'static str,
    analytic: Option<f64>,
    quoted: Option<f64>,
    reference: Option<f64>,
    mc: Vec<f64>,
    time: Vec<f64>,
    power: i32,
}

const QUANTITIES: [(&str, EntropyKind, i32); 4] = [
    ("S", EntropyKind::Shannon, 1),
    ("S_L", EntropyKind::Linear, 1),
    ("S^2", EntropyKind::Shannon, 2),
    ("S_L^2", EntropyKind::Linear, 2),
];

pub fn run_moments(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let samples = cfg.samples.unwrap_or(100_000);
    let steps = cfg.steps.unwrap_or(100_000);
    let root = RandomStream::new(cfg.seed);
    let mut rows = Vec::new();

    for (k, class) in ChamberClass::ALL.into_iter().enumerate() {
        let mc = gamma_entropies(class, samples, root.substream(k as u64).key());
        let alpha = generic_alpha(class, &mut root.substream(10 + k as u64));
        let time = EntropySamples {
            shannon: trajectory_entropy_values(alpha, steps, EntropyKind::Shannon),
            linear: trajectory_entropy_values(alpha, steps, EntropyKind::Linear),
        };
        for (q, (name, kind, power)) in QUANTITIES.into_iter().enumerate() {
            let analytic = gamma_reference(class, kind, power);
            rows.push(MomentRow {
                group: "chamber",
                row: format!("Gamma_{}", class.roman()),
                quantity: name,
                analytic: Some(analytic),
                quoted: Some(CHAMBER_QUOTED[k][q]),
                reference: Some(analytic),
                mc: mc.get(kind).to_vec(),
                time: time.get(kind).to_vec(),
                power,
            });
        }
    }

    let both = [EntropyKind::Shannon, EntropyKind::Linear];
    let ensembles = [
        ("CUE_4", EnsembleKind::Cue(4), [Some(1.078), Some(0.6)]),
        ("CPE_4", EnsembleKind::Cpe(4), [Some(0.386), Some(0.25)]),
    ];
    for (j, (label, kind, quoted)) in ensembles.into_iter().enumerate() {
        let spec = EnsembleSpec::new(kind, root.substream(20 + j as u64).key())?;
        let mc = ensemble_entropies(&spec, samples)?;
        // A single small Haar gate keeps its eigenvectors along the
        // trajectory and is not ergodic over CUE, so only the diagonal
        // (torus) trajectory gets a time average.
        let time = match kind {
            EnsembleKind::Cpe(d) => {
                let gate = cpe_diagonal(d, &mut root.substream(30 + j as u64));
                let mut cols = power_trajectory_entropies(&gate, steps, &both)?;
                EntropySamples {
                    linear: cols.pop().unwrap_or_default(),
                    shannon: cols.pop().unwrap_or_default(),
                }
            }
            _ => EntropySamples::default(),
        };
        let (s_formula, sl_formula) = match kind {
            EnsembleKind::Cue(_) => cue_means(2)?,
            _ => cpe_means(2)?,
        };
        for (name, ekind, power) in QUANTITIES {
            let (analytic, quoted_value) = match (name, power) {
                ("S", 1) => (Some(s_formula), quoted[0]),
                ("S_L", 1) => (Some(sl_formula), quoted[1]),
                _ => (None, None),
            };
            // the CUE Shannon formula is asymptotic, so compare with the table
            let reference = match (kind, name) {
                (EnsembleKind::Cue(_), "S") => quoted_value,
                _ => analytic,
            };
            rows.push(MomentRow {
                group: "ensemble",
                row: label.to_string(),
                quantity: name,
                analytic,
                quoted: quoted_value,
                reference,
                mc: mc.get(ekind).to_vec(),
                time: time.get(ekind).to_vec(),
                power,
            });
        }
    }

    let mut table = Table::new(&[
        "group",
        "row",
        "quantity",
        "analytic",
        "quoted",
        "reference",
        "monte_carlo",
        "mc_stderr",
        "z_mc",
        "time_average",
        "time_stderr",
        "z_time",
    ]);
    let mut worst: f64 = 0.0;
    for r in &rows {
        let est = |v: &[f64]| v.iter().map(|x| x.powi(r.power)).sum::<f64>() / v.len() as f64;
        let mc = est(&r.mc);
        let mc_se = jackknife_moment_stderr(&r.mc, r.power, JACKKNIFE_BLOCKS);
        let z_mc = r.reference.map(|v| (mc - v) / mc_se);
        let (time, time_se) = if r.time.is_empty() {
            (None, None)
        } else {
            let se = jackknife_moment_stderr(&r.time, r.power, JACKKNIFE_BLOCKS);
            (Some(est(&r.time)), Some(se))
        };
        let z_time = r
            .reference
            .zip(time)
            .zip(time_se)
            .map(|((v, t), se)| (t - v) / se);
        for z in [z_mc, z_time].into_iter().flatten() {
            worst = worst.max(z.abs());
        }
        table.push(vec![
            r.group.into(),
            r.row.clone().into(),
            r.quantity.into(),
            r.analytic.into(),
            r.quoted.into(),
            r.reference.into(),
            mc.into(),
            mc_se.into(),
            z_mc.into(),
            time.into(),
            time_se.into(),
            z_time.into(),
        ]);
    }
    table.meta("max_abs_z", worst);
    Ok(Report::new(table))
}

pub fn run_spectral(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let mut columns = vec!["x_lo", "x_hi", "x_center", "mp_pdf"];
    let mut data: Vec<(String, Vec<f64>)> = Vec::new();
    if let Some(target) = cfg.target {
        let s = induced_state_spectrum(&named_gate(target))?;
        data.push((target.name().replace('-', "_"), s.x));
    } else {
        let n = cfg.dims.unwrap_or(10);
        let samples = cfg.samples.unwrap_or(1000);
        let modes: Vec<SpectralMode> = match cfg.mode {
            Some(m) => vec![m],
            None => SpectralMode::ALL.to_vec(),
        };
        for (i, mode) in modes.into_iter().enumerate() {
            let seed = RandomStream::new(cfg.seed).substream(i as u64).key();
            data.push((
                mode.name().to_string(),
                spectral_samples(mode, n * n, samples, seed)?,
            ));
        }
    }
    let names: Vec<String> = data
        .iter()
        .flat_map(|(name, _)| [format!("count_{name}"), format!("density_{name}")])
        .collect();
    columns.extend(names.iter().map(String::as_str));
    let mut table = Table::new(&columns);
    let hists: Vec<Histogram> = data
        .iter()
        .map(|(_, x)| {
            let mut h = Histogram::uniform(0.0, 4.0, cfg.bins)?;
            h.extend(x.iter().copied());
            Ok(h)
        })
        .collect::<Result<_, CliError>>()?;
    for ((name, x), h) in data.iter().zip(&hists) {
        if x.len() >= 2 {
            table.meta(&format!("ks_{name}"), ks_distance(x, mp_cdf)?);
        }
        if h.overflow() + h.underflow() > 0 {
            table.meta(&format!("outside_{name}"), h.overflow() + h.underflow());
        }
    }
    let densities: Vec<Vec<f64>> = hists.iter().map(Histogram::density).collect();
    let edges = Histogram::uniform(0.0, 4.0, cfg.bins)?.edges().to_vec();
    for (b, w) in edges.windows(2).enumerate() {
        let center = 0.5 * (w[0] + w[1]);
        let mut row: Vec<Cell> = vec![
            w[0].into(),
            w[1].into(),
            center.into(),
            mp_pdf(center).into(),
        ];
        for (h, dens) in hists.iter().zip(&densities) {
            row.push(h.counts()[b].into());
            row.push(dens[b].into());
        }
        table.push(row);
    }
    Ok(Report::new(table))
}

/// Published `(mean, error, printed decimals)` at `d = 4` and `d = 100`.
fn quoted_freeness(pair: FreenessPair, d: usize) -> Option<(f64, f64, i32)> {
    let row = match pair {
        FreenessPair::Wishart => [(0.25, 0.05, 2), (0.0099, 0.0001, 4)],
        FreenessPair::InducedStates => [(0.25, 0.05, 2), (0.0100, 0.0001, 4)],
        FreenessPair::ReshuffledPower(2) => [(0.22, 0.11, 2), (0.0091, 0.0043, 4)],
        FreenessPair::ReshuffledPower(3) => [(0.31, 0.16, 2), (0.0121, 0.0061, 4)],
        FreenessPair::Transpose => [(0.29, 0.20, 2), (0.0112, 0.0080, 4)],
        FreenessPair::ReshuffledPower(_) => return None,
    };
    match d {
        4 => Some(row[0]),
        100 => Some(row[1]),
        _ => None,
    }
}

pub fn run_freeness(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let pairs = cfg.samples.unwrap_or(10_000);
    let dims: Vec<usize> = match cfg.dims {
        Some(n) => vec![n * n],
        None => vec![4, 100],
    };
    let root = RandomStream::new(cfg.seed);
    let mut table = Table::new(&[
        "A",
        "B",
        "d",
        "mean",
        "std",
        "stderr",
        "quoted_mean",
        "quoted_err",
        "within_quoted",
    ]);
    for (i, pair) in FreenessPair::TABLE.into_iter().enumerate() {
        for (j, &d) in dims.iter().enumerate() {
            let seed = root.substream((i * dims.len() + j) as u64).key();
            let v = freeness_samples(pair, d, pairs, seed)?;
            let m = moments(&v);
            let quoted = quoted_freeness(pair, d);
            let within = quoted.map(|(value, err, decimals)| {
                let scale = 10f64.powi(decimals);
                let shown = (m.mean * scale).round() / scale;
                if (shown - value).abs() <= err + 1e-12 {
                    "yes"
                } else {
                    "no"
                }
            });
            let (a, b) = pair.labels();
            table.push(vec![
                a.into(),
                b.into(),
                d.into(),
                m.mean.into(),
                m.variance.max(0.0).sqrt().into(),
                m.stderr_mean.into(),
                quoted.map(|q| q.0).into(),
                quoted.map(|q| q.1).into(),
                within.map_or(Cell::Empty, Cell::from),
            ]);
        }
    }
    Ok(Report::new(table))
}

pub fn run_approximate(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let target = cfg.target.unwrap_or(NamedGate::Cnot);
    let gate = named_gate(target);
    let class = match cfg.class {
        Some(c) => c,
        None => chamber_class(extract_content(&gate)?, DEFAULT_ZERO_TOL),
    };
    let steps = cfg.steps.unwrap_or(100_000);
    let mut rng = RandomStream::new(cfg.seed);
    let options = ApproximationOptions { class, budget: 64 };
    let approx = approximate_gate(&gate, cfg.fidelity, &mut rng, options)?;
    let e = EntropySamples {
        shannon: trajectory_entropy_values(approx.alpha, steps, EntropyKind::Shannon),
        linear: trajectory_entropy_values(approx.alpha, steps, EntropyKind::Linear),
    };
    let is_edge = class == ChamberClass::GammaI;
    let mut main = histogram_table(&entropy_series(&e, 4, is_edge), cfg.bins)?;
    main.meta("target_gate", target.name());
    main.meta("perturbation_class", class.roman());
    main.meta("alpha", fmt_alpha(approx.alpha));
    main.meta("fidelity_achieved", approx.fidelity);
    if is_edge {
        ks_arcsine_meta(&mut main, &e.linear)?;
    }
    let mut report = Report::new(main);
    if !e.linear.is_empty() {
        report.sidecar(
            "moments",
            moments_table(&[("S", &e.shannon, None), ("S_L", &e.linear, None)]),
        );
    }
    Ok(report)
}

pub fn run_interlace(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let samples = cfg.samples.unwrap_or(10_000);
    let steps = cfg.steps.unwrap_or(10);
    let root = RandomStream::new(cfg.seed);
    let alpha = match cfg.alpha {
        Some(raw) => {
            let a = raw.canonical();
            if chamber_class(a, DEFAULT_ZERO_TOL) != ChamberClass::GammaI {
                return Err(CliError::Config(format!(
                    "interlace needs a base gate on the Γ_I edge, got alpha {}",
                    fmt_alpha(a)
                )));
            }
            a
        }
        None => generic_alpha(ChamberClass::GammaI, &mut root.substream(0)),
    };
    let v = weyl_billiard::gates::cartan_gate(alpha);
    let times: Vec<u64> = (1..=steps as u64).collect();
    let control = interlaced_contents(&v, &named_gate(NamedGate::Identity), &times)?;
    let dressed = try_chunked(&root.substream(1), samples, |rng, len| {
        (0..len)
            .map(|_| interlaced_contents(&v, &random_local(rng), &times))
            .collect()
    })?;

    let mut table = Table::new(&["sample_id", "t", "alpha1", "alpha2", "alpha3"]);
    table.meta("alpha0", fmt_alpha(alpha));
    let count = |t: usize, k: usize| {
        dressed
            .iter()
            .filter(|c| c[t - 1].alpha[k] > DEFAULT_ZERO_TOL)
            .count() as f64
            / dressed.len().max(1) as f64
    };
    if steps >= 2 {
        table.meta("frac_alpha2_positive_t2", count(2, 1));
    }
    if steps >= 3 {
        table.meta("frac_alpha3_positive_t3", count(3, 2));
    }
    if steps >= 1 {
        let mut visited = [false; SUBCELLS];
        for c in &dressed {
            visited[subcell(c[steps - 1])] = true;
        }
        table.meta(
            &format!("subcells_visited_t{steps}"),
            visited.iter().filter(|&&v| v).count(),
        );
    }
    for (id, contents) in std::iter::once(&control).chain(&dressed).enumerate() {
        for (t, c) in times.iter().zip(contents) {
            table.push(vec![
                id.into(),
                (*t).into(),
                c.alpha[0].into(),
                c.alpha[1].into(),
                c.alpha[2].into(),
            ]);
        }
    }
    Ok(Report::new(table))
}

pub fn run_tables(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let mut report = run_moments(cfg)?;
    let mut free_cfg = cfg.clone();
    free_cfg.samples = None;
    free_cfg.dims = None;
    let freeness = run_freeness(&free_cfg)?;
    report.sidecar("freeness", freeness.main);
    Ok(report)
}
