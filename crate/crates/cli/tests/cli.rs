use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use atoro_core::planar_code::write_planar_code;
use atoro_core::{exception, torus_graph, ExceptionKind, PlaneMap};

fn atoro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atoro")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("atoro-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, g: &PlaneMap) -> String {
        let p = self.0.join(name);
        fs::write(&p, write_planar_code(g)).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn granny() -> PlaneMap {
    let t = exception(ExceptionKind::TrefoilProjection);
    t.connected_sum(0, &t, 0).unwrap()
}

#[test]
fn classify_examples() {
    let s = Scratch::new("classify");
    let out = stdout(&atoro(&["classify", &s.write("t3.ag", &torus_graph(3).unwrap())]));
    assert!(out.contains("atoroidal: yes, hyperbolic: yes"), "{out}");

    let out = stdout(&atoro(&["classify", &s.write("tref.ag", &exception(ExceptionKind::TrefoilProjection))]));
    assert!(out.contains("atoroidal: yes, hyperbolic: no (exception: trefoil)"), "{out}");

    let out = stdout(&atoro(&["classify", &s.write("granny.ag", &granny())]));
    assert!(out.contains("irreducible: no"), "{out}");
    assert!(out.contains("witness: n=2;"), "{out}");

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&atoro(&["classify", &s.path("granny.ag"), "--format", "json"]))).unwrap();
    assert_eq!(json[0]["irreducible"], false);
    assert_eq!(json[0]["witness"]["degree"], 2);
}

#[test]
fn parse_errors_report_lines() {
    let s = Scratch::new("parse");
    let p = s.path("bad.ag");
    fs::write(&p, "AG 1 0\n0: 0.1 0.0 0.3 9.9\n").unwrap();
    let o = atoro(&["classify", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn exit_codes() {
    assert_eq!(atoro(&[]).status.code(), Some(1));
    assert_eq!(atoro(&["enumerate"]).status.code(), Some(1));
    assert_eq!(atoro(&["--help"]).status.code(), Some(0));
    assert_eq!(atoro(&["classify", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(atoro(&["enumerate", "--max-crossings", "17"]).status.code(), Some(3));
    let s = Scratch::new("exit");
    let p = s.path("broken.txt");
    fs::write(&p, "ATOROv1 max_v=3 mode=mod-reflection\nL 0 2\n010000000001\n").unwrap();
    let o = atoro(&["enumerate", "--max-crossings", "5", "--resume", &p]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_and_resume() {
    let s = Scratch::new("enum");
    let (c9, c12, fresh) = (s.path("c9.txt"), s.path("c12.txt"), s.path("fresh.txt"));
    let o = atoro(&["enumerate", "--max-crossings", "9", "--out", &c9]);
    assert!(o.status.success());
    let counts: Vec<String> =
        stdout(&o).lines().skip(1).take(10).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(counts.join(","), "1,1,1,1,0,0,1,0,1,1");

    assert!(atoro(&["enumerate", "--max-crossings", "12", "--resume", &c9, "--out", &c12]).status.success());
    assert!(atoro(&["enumerate", "--max-crossings", "12", "--out", &fresh]).status.success());
    assert_eq!(fs::read(&c12).unwrap(), fs::read(&fresh).unwrap());

    let o = atoro(&["enumerate", "--max-crossings", "5", "--resume", &c9, "--chirality", "oriented"]);
    assert_eq!(o.status.code(), Some(1));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&atoro(&["enumerate", "--max-crossings", "8", "--format", "json"]))).unwrap();
    assert_eq!(json["total"], 6);
    assert_eq!(json["levels"][6]["count"], 1);
}

#[test]
fn checkpoint_is_readable_input() {
    let s = Scratch::new("ckpt");
    let c = s.path("c9.txt");
    atoro(&["enumerate", "--max-crossings", "9", "--out", &c]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&atoro(&["classify", &c, "--format", "json"]))).unwrap();
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["atoroidal"] == true));
}

#[test]
fn surgery_commands() {
    let s = Scratch::new("surgery");
    let t4 = s.write("t4.ag", &torus_graph(4).unwrap());
    let list = stdout(&atoro(&["surgery", &t4, "--list"]));
    assert_eq!(list.lines().count(), 16);

    let first = list.lines().next().unwrap();
    let o = atoro(&["surgery", &t4, "--apply", first, "--out", &s.path("t4p.ag")]);
    assert!(o.status.success());
    let out = stdout(&atoro(&["classify", &s.path("t4p.ag")]));
    assert!(out.contains("vertices: 9"));
    assert!(out.contains("hyperbolic: yes"));

    let preds = stdout(&atoro(&["surgery", &s.path("t4p.ag"), "--predecessors"]));
    assert!(preds.contains("# split v8"));
    let split = stdout(&atoro(&["surgery", &s.path("t4p.ag"), "--split", "8"]));
    assert!(split.starts_with("# inverse: surgery"));

    assert_eq!(atoro(&["surgery", &t4, "--split", "0"]).status.code(), Some(1));
    assert_eq!(atoro(&["surgery", &t4, "--apply", "nonsense"]).status.code(), Some(1));
    assert_eq!(atoro(&["surgery", &t4, "--list", "--simple"]).status.code(), Some(1));
}

#[test]
fn decompose_and_reassemble() {
    let s = Scratch::new("decompose");
    let g = s.write("granny.ag", &granny());
    let tree = s.path("tree.txt");
    assert!(atoro(&["decompose", &g, "--out", &tree]).status.success());
    let text = fs::read_to_string(&tree).unwrap();
    assert!(text.starts_with("cut n=2"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("leaf AG 3")).count(), 2);

    let back = s.path("back.ag");
    assert!(atoro(&["decompose", &tree, "--reassemble", "--out", &back]).status.success());
    let code = |p: &str| {
        let out = stdout(&atoro(&["classify", p]));
        out.lines().find(|l| l.starts_with("code:")).unwrap().to_string()
    };
    assert_eq!(code(&back), code(&g));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&atoro(&["decompose", &g, "--format", "json"]))).unwrap();
    assert_eq!(json["kind"], "cut");
    assert_eq!(json["left"]["exception"], "trefoil");
    assert_eq!(json["right"]["exception"], "trefoil");
}

#[test]
fn recombine_round_trip() {
    let s = Scratch::new("recombine");
    let t3 = s.write("t3.ag", &torus_graph(3).unwrap());
    let t4 = s.write("t4.ag", &torus_graph(4).unwrap());
    let comp = s.path("comp.ag");
    let o = atoro(&["recombine", &t3, "0", &t4, "2", "--rotation", "3", "--reflected", "--out", &comp]);
    assert!(o.status.success());
    let out = stdout(&atoro(&["classify", &comp]));
    assert!(out.contains("vertices: 12"));
    assert!(out.contains("atoroidal: no"));
    assert!(out.contains("witness: n=4;"));

    let tree = stdout(&atoro(&["decompose", &comp]));
    assert!(tree.starts_with("cut n=4"));

    let hopf = s.write("hopf.ag", &exception(ExceptionKind::HopfProjection));
    assert_eq!(atoro(&["recombine", &t3, "0", &hopf, "0"]).status.code(), Some(1));
    assert_eq!(atoro(&["recombine", &t3, "0", &t4, "0", "--rotation", "4"]).status.code(), Some(1));
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

#[test]
fn render_svg() {
    let s = Scratch::new("render");
    let o = atoro(&["render", &s.write("t3.ag", &torus_graph(3).unwrap())]);
    assert!(o.status.success());
    let svg = stdout(&o);
    assert_eq!(count(&svg, "vertex"), 6);
    assert_eq!(count(&svg, "edge"), 12);
    assert!(o.stderr.is_empty());

    let c = s.path("c12.txt");
    atoro(&["enumerate", "--max-crossings", "12", "--out", &c]);
    let dir = s.path("svgs");
    let o = atoro(&["render", &c, "--out", &dir]);
    assert!(o.status.success());
    assert!(o.stderr.is_empty(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_dir(Path::new(&dir)).unwrap().count(), 20);
}
