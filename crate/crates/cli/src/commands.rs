use std::fs;
use std::path::{Path, PathBuf};

use frontdga::augment::{dga_homotopic, search_augmentations, verify_augmentation, Homotopy, SearchSpace};
use frontdga::diagram::{named_gradings, parse_front, parse_shifts_header};
use frontdga::disks::{check_d_squared, differential, DiskConfig};
use frontdga::homology::{duality_check, graded_homology};
use frontdga::linearized::{bilinearized_complex, describe};
use frontdga::{Augmentation, Dga, FrontDiagram, GradedComplex, GradedModule, PotentialAssignment};
use num_bigint::{BigInt, Sign};
use num_traits::One;
use serde_json::{json, Value};
use surgery::catalog::Params;
use surgery::{Catalog, Legendrian, NamedAugmentation, OpRegistry, ParamSpec, Pipeline};

use crate::error::CliError;
use crate::report::{emit, Format, Record};
use crate::{Command, Front, Pair};

pub struct Context {
    pub cap: Option<usize>,
    pub format: Format,
}

impl Context {
    fn config(&self) -> DiskConfig {
        match self.cap {
            Some(cap) => DiskConfig { cap },
            None => DiskConfig::default(),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Loaded {
    diagram: FrontDiagram,
    potential: PotentialAssignment,
    dga: Dga,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(ctx: &Context, front: &Front) -> Result<Loaded> {
    let text = read(&front.front)?;
    let diagram = parse_front(&text)?;
    let shifts = parse_shifts_header(&text)?.unwrap_or_default();
    let potential = diagram.maslov_potential(&shifts)?;
    let dga = differential(&diagram, &potential, ctx.config())?;
    Ok(Loaded { diagram, potential, dga })
}

fn load_aug(dga: &Dga, path: &Path) -> Result<Augmentation> {
    let eps = Augmentation::parse(dga, &read(path)?)?;
    if !verify_augmentation(dga, &eps) {
        return Err(CliError::NotAugmentation(path.to_path_buf()));
    }
    Ok(eps)
}

pub fn run(ctx: &Context, command: Command) -> Result<()> {
    let records = match command {
        Command::Validate(f) => validate(ctx, &f)?,
        Command::Invariants(f) => invariants(ctx, &f)?,
        Command::Dga { front, check } => dga(ctx, &front, check)?,
        Command::Augs { front, bound, modulus, limit, out } => augs(ctx, &front, bound, modulus, limit, out)?,
        Command::Homotopic(p) => homotopic(ctx, &p)?,
        Command::Lch { front, aug, complex } => {
            let l = load(ctx, &front)?;
            let eps = load_aug(&l.dga, &aug)?;
            lch(&l.dga, &eps, &eps, complex)?
        }
        Command::Bilch { pair, complex } => {
            let l = load(ctx, &pair.front)?;
            let e1 = load_aug(&l.dga, &pair.aug1)?;
            let e2 = load_aug(&l.dga, &pair.aug2)?;
            lch(&l.dga, &e1, &e2, complex)?
        }
        Command::Duality(p) => duality(ctx, &p)?,
        Command::Construct { name, params, out, list } => {
            if list {
                list_catalog()
            } else {
                construct(name.as_deref().unwrap_or_default(), &params, out.as_deref())?
            }
        }
        Command::Surgery { op, front, params, augs, out, list } => {
            if list {
                list_ops()
            } else {
                let (op, front) = op.zip(front).ok_or_else(|| CliError::Usage("surgery needs a move and a front".into()))?;
                surgery_cmd(ctx, &op, &front, &params, &augs, out.as_deref())?
            }
        }
    };
    let stdout = std::io::stdout();
    match emit(&mut stdout.lock(), &records, ctx.format) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: PathBuf::from("<stdout>"), source: e }),
        _ => Ok(()),
    }
}

fn validate(ctx: &Context, f: &Front) -> Result<Vec<Record>> {
    let l = load(ctx, f)?;
    let d = &l.diagram;
    let mut out = Vec::new();
    for &e in d.inserted_base_points() {
        out.push(Record::new(
            "warning",
            json!({"event": e, "message": "base point inserted"}),
            format!("warning: base point inserted at event {}", e + 1),
        ));
    }
    out.push(Record::new(
        "front",
        json!({
            "events": d.events().len(),
            "components": d.component_count(),
            "generators": d.generators().len(),
            "shifts": l.potential.shifts,
        }),
        format!(
            "ok: {} events, {} components, {} generators",
            d.events().len(),
            d.component_count(),
            d.generators().len()
        ),
    ));
    Ok(out)
}

fn invariants(ctx: &Context, f: &Front) -> Result<Vec<Record>> {
    let l = load(ctx, f)?;
    let inv = l.diagram.classical_invariants();
    let mut text = format!("tb = {}, writhe = {}, right cusps = {}", inv.total_tb, inv.writhe, inv.right_cusps);
    for (c, (tb, r)) in inv.tb.iter().zip(&inv.rotation).enumerate() {
        text.push_str(&format!("\ncomponent {}: tb = {}, r = {}", c, tb, r));
    }
    let gradings = named_gradings(&l.diagram, &l.potential);
    let mut out = vec![Record::new("invariants", serde_json::to_value(&inv).unwrap(), text)];
    let list: Vec<String> = gradings.iter().map(|(n, g)| format!("|{}| = {}", n, g)).collect();
    out.push(Record::new("gradings", json!(gradings), list.join("\n")));
    Ok(out)
}

fn dga(ctx: &Context, f: &Front, check: bool) -> Result<Vec<Record>> {
    let l = load(ctx, f)?;
    let dga = &l.dga;
    let mut out = Vec::new();
    for g in 0..dga.len() {
        let image = dga.differential[g].format(&dga.names, dga.components);
        out.push(Record::new(
            "differential",
            json!({"generator": dga.names[g], "grading": dga.gradings[g], "image": image}),
            format!("d {} = {}", dga.names[g], image),
        ));
    }
    if check {
        let bad: Vec<String> = check_d_squared(dga).into_iter().map(|(g, _)| dga.names[g].clone()).collect();
        let text = if bad.is_empty() { "d^2 = 0".to_string() } else { format!("d^2 != 0 on {}", bad.join(", ")) };
        out.push(Record::new("d_squared", json!({"zero": bad.is_empty(), "failures": bad}), text));
    }
    Ok(out)
}

fn augs(
    ctx: &Context,
    f: &Front,
    bound: Option<i64>,
    modulus: Option<i64>,
    limit: usize,
    dir: Option<PathBuf>,
) -> Result<Vec<Record>> {
    let l = load(ctx, f)?;
    let space = match (bound, modulus) {
        (_, Some(m)) if m < 2 => return Err(CliError::Usage("--mod needs a modulus of at least 2".into())),
        (_, Some(m)) => SearchSpace::Modulus(m),
        (Some(b), None) => SearchSpace::Box(b),
        (None, None) => SearchSpace::Box(1),
    };
    let found = search_augmentations(&l.dga, space, limit)?;
    let mut out = vec![Record::new("count", json!({"count": found.len()}), format!("{} augmentations", found.len()))];
    for (i, eps) in found.iter().enumerate() {
        let values: serde_json::Map<String, Value> =
            eps.to_named(&l.dga).into_iter().map(|(k, v)| (k, json!(v.to_string()))).collect();
        out.push(Record::new("augmentation", json!({"index": i, "values": values}), eps.format(&l.dga)));
        if let Some(dir) = &dir {
            write(&dir.join(format!("aug{}.aug", i)), &eps.to_file(&l.dga))?;
        }
    }
    Ok(out)
}

fn homotopic(ctx: &Context, p: &Pair) -> Result<Vec<Record>> {
    let l = load(ctx, &p.front)?;
    let e1 = load_aug(&l.dga, &p.aug1)?;
    let e2 = load_aug(&l.dga, &p.aug2)?;
    Ok(vec![match dga_homotopic(&l.dga, &e1, &e2) {
        Homotopy::Homotopic(w) => {
            let k: serde_json::Map<String, Value> =
                w.k.iter().map(|(g, v)| (l.dga.names[*g].clone(), json!(v.to_string()))).collect();
            let text: Vec<String> = k.iter().map(|(n, v)| format!("K({}) = {}", n, v.as_str().unwrap())).collect();
            Record::new(
                "homotopy",
                json!({"homotopic": true, "witness": k}),
                format!("homotopic{}{}", if text.is_empty() { "" } else { ": " }, text.join(", ")),
            )
        }
        Homotopy::NotHomotopic => Record::new("homotopy", json!({"homotopic": false}), "not homotopic"),
    }])
}

fn complex_records(dga: &Dga, c: &GradedComplex) -> Vec<Record> {
    describe(dga, c)
        .into_iter()
        .map(|(a, image)| {
            let text = linear_text(dga, &image);
            Record::new(
                "complex",
                json!({
                    "generator": dga.names[a],
                    "degree": dga.gradings[a],
                    "image": image.iter().map(|(b, v)| json!([dga.names[*b], v.to_string()])).collect::<Vec<_>>(),
                }),
                format!("d {} = {}", dga.names[a], text),
            )
        })
        .collect()
}

fn linear_text(dga: &Dga, image: &[(usize, BigInt)]) -> String {
    let mut s = String::new();
    for (i, (b, v)) in image.iter().enumerate() {
        let (sign, mag) = if v.sign() == Sign::Minus { ("-", -v) } else { ("+", v.clone()) };
        match (i, sign) {
            (0, "-") => s.push('-'),
            (0, _) => {}
            _ => s.push_str(&format!(" {} ", sign)),
        }
        if !mag.is_one() {
            s.push_str(&format!("{} ", mag));
        }
        s.push_str(&dga.names[*b]);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn homology_records(h: &GradedModule) -> Vec<Record> {
    let mut out: Vec<Record> = h
        .records()
        .into_iter()
        .map(|r| {
            let text = format!("degree {}: rank {}, torsion [{}]", r.degree, r.rank, r.torsion.join(", "));
            Record::new("homology", serde_json::to_value(&r).unwrap(), text)
        })
        .collect();
    out.push(Record::new("summary", json!({"module": h.shift_notation()}), format!("LCH = {}", h.shift_notation())));
    out
}

fn lch(dga: &Dga, e1: &Augmentation, e2: &Augmentation, complex: bool) -> Result<Vec<Record>> {
    let c = bilinearized_complex(dga, e1, e2);
    let mut out = if complex { complex_records(dga, &c) } else { Vec::new() };
    out.extend(homology_records(&graded_homology(&c)?));
    Ok(out)
}

fn duality(ctx: &Context, p: &Pair) -> Result<Vec<Record>> {
    let l = load(ctx, &p.front)?;
    let e1 = load_aug(&l.dga, &p.aug1)?;
    let e2 = load_aug(&l.dga, &p.aug2)?;
    let tb = l.diagram.classical_invariants().total_tb;
    let report = duality_check(&l.dga, tb, &e1, &e2)?;
    let mut out = vec![Record::new(
        "duality",
        json!({"homotopic": report.homotopic, "tau0_image": report.tau0_image, "passed": report.all_passed()}),
        format!("homotopic: {}, image of tau0: {}Z", report.homotopic, report.tau0_image),
    )];
    for c in &report.checks {
        out.push(Record::new(
            "check",
            serde_json::to_value(c).unwrap(),
            format!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.witness),
        ));
    }
    Ok(out)
}

fn spec_text(specs: &[ParamSpec]) -> String {
    specs
        .iter()
        .map(|s| if s.default.is_empty() { format!("{} ({})", s.name, s.doc) } else { format!("{}={} ({})", s.name, s.default, s.doc) })
        .collect::<Vec<_>>()
        .join("; ")
}

fn spec_json(specs: &[ParamSpec]) -> Value {
    json!(specs.iter().map(|s| json!({"name": s.name, "default": s.default, "doc": s.doc})).collect::<Vec<_>>())
}

fn list_catalog() -> Vec<Record> {
    let cat = Catalog::standard();
    cat.names()
        .map(|n| {
            let e = cat.get(n).expect("listed");
            Record::new(
                "entry",
                json!({"name": n, "summary": e.summary(), "parameters": spec_json(e.parameters())}),
                match e.parameters() {
                    [] => format!("{}: {}", n, e.summary()),
                    ps => format!("{}: {}\n    {}", n, e.summary(), spec_text(ps)),
                },
            )
        })
        .collect()
}

fn list_ops() -> Vec<Record> {
    let ops = OpRegistry::standard();
    ops.names()
        .map(|n| {
            let o = ops.get(n).expect("listed");
            Record::new(
                "move",
                json!({"name": n, "summary": o.summary(), "parameters": spec_json(o.parameters())}),
                format!("{}: {}\n    {}", n, o.summary(), spec_text(o.parameters())),
            )
        })
        .collect()
}

fn construct(name: &str, params: &[String], dir: Option<&Path>) -> Result<Vec<Record>> {
    let params = Params::parse(params)?;
    let c = Catalog::standard().build(name, &params)?;
    let front = c.legendrian().to_text();
    let mut out = Vec::new();
    match dir {
        Some(dir) => {
            let path = dir.join(format!("{}.front", name));
            write(&path, &front)?;
            out.push(Record::new("file", json!({"kind": "front", "path": path}), format!("wrote {}", path.display())));
        }
        None => out.push(Record::new("front", json!({"text": front}), front.trim_end())),
    }
    for label in &c.labels {
        let eps = c.augmentation(label).expect("labels come from the construction");
        let text = eps.to_file(c.dga());
        match dir {
            Some(dir) => {
                let path = dir.join(format!("{}.{}.aug", name, label));
                write(&path, &text)?;
                out.push(Record::new(
                    "file",
                    json!({"kind": "augmentation", "label": label, "path": path}),
                    format!("wrote {}", path.display()),
                ));
            }
            None => out.push(Record::new(
                "augmentation",
                json!({"label": label, "text": text}),
                format!("# augmentation {}\n{}", label, text.trim_end()),
            )),
        }
    }
    Ok(out)
}

fn surgery_cmd(
    ctx: &Context,
    op: &str,
    front: &Path,
    params: &[String],
    augs: &[PathBuf],
    dest: Option<&Path>,
) -> Result<Vec<Record>> {
    let l = Legendrian::from_file(&read(front)?)?;
    let params = Params::parse(params)?;
    let rw = OpRegistry::standard().get(op)?.apply(&l, &params)?;
    let mut out = vec![Record::new(
        "rewrite",
        json!({"move": op, "created": rw.created, "removed": rw.removed}),
        format!("# {}: created [{}], removed [{}]", op, rw.created.join(" "), rw.removed.join(" ")),
    )];
    let mut carried = Vec::new();
    if !augs.is_empty() {
        let dga = l.dga(ctx.config())?;
        let named: Vec<NamedAugmentation> =
            augs.iter().map(|p| Ok(load_aug(&dga, p)?.to_named(&dga))).collect::<Result<_>>()?;
        let mut pipe = Pipeline::new(l.clone(), &named, ctx.config())?;
        pipe.apply(rw.clone())?;
        for (i, p) in augs.iter().enumerate() {
            let eps = pipe.augmentation(i);
            carried.push((p.clone(), eps.to_file(pipe.dga())));
        }
    }
    let text = rw.result.to_text();
    match dest {
        Some(path) => {
            write(path, &text)?;
            out.push(Record::new("file", json!({"kind": "front", "path": path}), format!("# wrote {}", path.display())));
        }
        None => out.push(Record::new("front", json!({"text": text}), text.trim_end())),
    }
    for (src, text) in carried {
        let comment: String = text.lines().map(|l| format!("\n#   {}", l)).collect();
        out.push(Record::new(
            "augmentation",
            json!({"source": src, "text": text}),
            format!("# carried {}:{}", src.display(), comment),
        ));
    }
    Ok(out)
}
