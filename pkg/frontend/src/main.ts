import { HttpSurveyApi } from "./api.js";
import { SessionController } from "./controller.js";
import { bind } from "./view.js";

const controller = new SessionController(new HttpSurveyApi());
bind(controller, document);
