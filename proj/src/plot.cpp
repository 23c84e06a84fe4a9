#include "cellring/plot.hpp"

#include "cellring/io.hpp"

namespace cellring {

namespace {

std::string header(const std::string& csv_name, const std::string& title) {
    const std::string png = csv_name.substr(0, csv_name.rfind('.')) + ".png";
    return "set terminal pngcairo size 900,700\n"
           "set output '" + png + "'\n"
           "set datafile separator ','\n"
           "set title '" + title + "'\n";
}

} // namespace

std::string grid_plot_script(const Grid& grid, const std::string& csv_name, const std::string& title) {
    const AxisSpec& x = grid.x_axis;
    const AxisSpec& y = grid.y_axis;
    std::string s = header(csv_name, title);
    s += "set datafile missing 'NaN'\n";
    s += "set xlabel '" + x.name + "'\nset ylabel '" + y.name + "'\n";
    s += "set xrange [" + format_double(x.start - x.step / 2) + ":" + format_double(x.stop + x.step / 2) + "]\n";
    s += "set yrange [" + format_double(y.start - y.step / 2) + ":" + format_double(y.stop + y.step / 2) + "]\n";
    if (grid.kind == GridKind::Category) {
        s += "set cbrange [-0.5:2.5]\n"
             "set palette defined (0 '#404040', 1 '#404040', 1 '#c8c8c8', 2 '#c8c8c8', 2 '#ffffff', 3 '#ffffff')\n"
             "set cbtics ('stable' 0, 'unstable' 1, 'indeterminate' 2)\n";
    } else {
        s += "set palette rgbformulae 33,13,10\n";
    }
    // matrix rows are y, columns x; map indices back to axis values
    s += "plot '" + csv_name + "' matrix using (" + format_double(x.start) + "+$1*" +
         format_double(x.step) + "):(" + format_double(y.start) + "+$2*" + format_double(y.step) +
         "):3 with image notitle\n";
    return s;
}

std::string spectrum_plot_script(const std::string& csv_name, const std::string& title) {
    return header(csv_name, title) +
           "set xlabel 'normalized threshold'\nset ylabel 'complexity'\n"
           "plot '" + csv_name + "' using 3:4 skip 1 with points pt 7 ps 0.4 notitle\n";
}

std::string trajectory_plot_script(const std::string& csv_name, std::size_t n_cells, const std::string& title) {
    std::string s = header(csv_name, title) + "set xlabel 'step'\nset ylabel 'x'\nset yrange [0:1]\nplot ";
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (i) s += ", \\\n     ";
        s += "'" + csv_name + "' using 1:" + std::to_string(i + 2) + " skip 1 with lines title 'x" +
             std::to_string(i + 1) + "'";
    }
    return s + "\n";
}

} // namespace cellring
