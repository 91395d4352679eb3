use pencilforge_core::render::*;
use pencilforge_core::ExactScalar;
use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let scene = RenderScene::new(12, ExactScalar::rational(-22, 243));
    let m = mesh(&scene);
    println!("mesh: {} vertices, {} triangles in {:?}", m.vertices.len(), m.triangles.len(), t0.elapsed());
    let worst = worst_relative_residual(&scene, &m);
    println!("worst relative residual: {worst:.4} (must be < 1)");
    let t0 = Instant::now();
    let mut small = scene.clone();
    small.image_width = 160; small.image_height = 120;
    let img = raster(&small);
    println!("raster {}x{} in {:?}, non-background {:.2}%", img.width, img.height, t0.elapsed(), 100.0 * img.non_background_fraction(BACKGROUND));
}
