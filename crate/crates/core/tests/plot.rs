use ivw_agreement::cli::simulate_case;
use ivw_agreement::io::{render_svg, PlotFrame, PlotOptions};
use ivw_agreement::{CasePreset, Direction};

/// (class, x1, y1, x2, y2, dasharray) of every `<line>` element.
fn lines(svg: &str) -> Vec<(String, [f64; 4], Option<String>)> {
    let attr = |tag: &str, name: &str| -> Option<String> {
        let key = format!(" {name}=\"");
        let start = tag.find(&key)? + key.len();
        let end = start + tag[start..].find('"')?;
        Some(tag[start..end].to_string())
    };
    svg.lines()
        .filter(|l| l.starts_with("<line"))
        .map(|l| {
            let coord = |n| attr(l, n).unwrap().parse::<f64>().unwrap();
            (
                attr(l, "class").unwrap(),
                [coord("x1"), coord("y1"), coord("x2"), coord("y2")],
                attr(l, "stroke-dasharray"),
            )
        })
        .collect()
}

fn case(c: CasePreset) -> (ivw_agreement::AgreementResult, ivw_agreement::AgreementResult) {
    let (_, classic, weighted) = simulate_case(&c.config(), Direction::BMinusA, 0.95).unwrap();
    (classic, weighted)
}

#[test]
fn one_solid_and_two_dashed_horizontal_rules() {
    for c in CasePreset::ALL {
        let (classic, weighted) = case(c);
        for res in [classic, weighted] {
            let svg = render_svg(&res, PlotOptions::default());
            let horizontal: Vec<_> = lines(&svg)
                .into_iter()
                .filter(|(class, [_, y1, _, y2], _)| class != "trend" && y1 == y2)
                .collect();
            let solid = horizontal.iter().filter(|l| l.2.is_none()).count();
            let dashed = horizontal.iter().filter(|l| l.2.as_deref() == Some("8 4")).count();
            assert_eq!((solid, dashed, horizontal.len()), (1, 2, 3));
        }
    }
}

#[test]
fn case_a_bias_line_sits_at_zero() {
    let (classic, _) = case(CasePreset::A);
    let svg = render_svg(&classic, PlotOptions::default());
    let frame = PlotFrame::for_result(&classic);
    let bias = lines(&svg).into_iter().find(|l| l.0 == "bias").unwrap();
    let (_, y) = frame.to_data(bias.1[0], bias.1[1]);
    // three decimals of pixel rounding
    let pixel = (frame.y_max - frame.y_min) / 470.0;
    assert!(y.abs() <= pixel * 5e-4, "{y}");
}

#[test]
fn case_d_weighted_trend_slope_from_coordinates() {
    let (_, weighted) = case(CasePreset::D);
    let svg = render_svg(&weighted, PlotOptions::default());
    let frame = PlotFrame::for_result(&weighted);
    let trend = lines(&svg).into_iter().find(|l| l.0 == "trend").unwrap();
    assert_eq!(trend.2.as_deref(), Some("2 3"));
    let [x1, y1, x2, y2] = trend.1;
    let (dx1, dy1) = frame.to_data(x1, y1);
    let (dx2, dy2) = frame.to_data(x2, y2);
    let slope = (dy2 - dy1) / (dx2 - dx1);
    assert!((slope - weighted.fit.slope).abs() < 1e-4, "{slope}");
    assert!((slope - -0.10).abs() < 0.005);
}

#[test]
fn rendering_is_deterministic() {
    let (classic, _) = case(CasePreset::C);
    assert_eq!(
        render_svg(&classic, PlotOptions::default()),
        render_svg(&classic.clone(), PlotOptions::default())
    );
}
