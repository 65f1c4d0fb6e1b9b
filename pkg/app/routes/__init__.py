from .main import main_blueprint
from .measures import measures_blueprint
from .extension import extension_blueprint
from .extremes import extremes_blueprint


def init_routes(app):
    app.register_blueprint(main_blueprint)
    app.register_blueprint(measures_blueprint)
    app.register_blueprint(extension_blueprint)
    app.register_blueprint(extremes_blueprint)
